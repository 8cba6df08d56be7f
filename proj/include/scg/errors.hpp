#pragma once

#include <stdexcept>
#include <string>

namespace scg {

enum class ErrorKind {
  domain,
  dimension_mismatch,
  degenerate_chord,
  no_containing_ball,
  infeasible,
  empty_body,
  schedule,
  budget,
  parse,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorKind::domain, what) {}
};

class DimensionMismatch : public Error {
 public:
  explicit DimensionMismatch(const std::string& what)
      : Error(ErrorKind::dimension_mismatch, what) {}
};

class DegenerateChord : public Error {
 public:
  explicit DegenerateChord(const std::string& what)
      : Error(ErrorKind::degenerate_chord, what) {}
};

// No closed ball of the requested radius contains the input. Carries the
// radius of the minimal enclosing ball as a diagnostic when known.
class NoContainingBall : public Error {
 public:
  NoContainingBall(const std::string& what, double enclosing_radius)
      : Error(ErrorKind::no_containing_ball, what), enclosing_radius_(enclosing_radius) {}

  double enclosing_radius() const noexcept { return enclosing_radius_; }

 private:
  double enclosing_radius_;
};

class Infeasible : public Error {
 public:
  Infeasible(const std::string& what, double enclosing_radius)
      : Error(ErrorKind::infeasible, what), enclosing_radius_(enclosing_radius) {}

  double enclosing_radius() const noexcept { return enclosing_radius_; }

 private:
  double enclosing_radius_;
};

class EmptyBody : public Error {
 public:
  explicit EmptyBody(const std::string& what) : Error(ErrorKind::empty_body, what) {}
};

class ScheduleError : public Error {
 public:
  explicit ScheduleError(const std::string& what) : Error(ErrorKind::schedule, what) {}
};

class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(const std::string& what) : Error(ErrorKind::budget, what) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(ErrorKind::parse, what) {}
};

}  // namespace scg
