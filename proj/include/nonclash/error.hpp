#pragma once

#include <stdexcept>
#include <string>

namespace nonclash {

// Base for every failure the library reports as a value the caller may
// recover from (bad input files, infeasible lifts, size guards).
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Malformed text or JSON input. Line is 1-based, 0 when not applicable.
class FormatError : public Error {
public:
  FormatError(const std::string& what, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const noexcept { return line_; }

private:
  int line_;
};

// An exhaustive procedure refused an instance that exceeds its configured limits.
class SizeGuardError : public Error {
public:
  using Error::Error;
};

// A teaching map is not defined on the family it is checked against,
// or has a teaching set that is not a subset of its ball.
class MapDomainError : public Error {
public:
  using Error::Error;
};

// An operation that requires a conflict-free map received one with conflicts.
class ConflictError : public Error {
public:
  using Error::Error;
};

// The induced-subgraph hypothesis for induced balls does not hold.
class InducedBallsError : public Error {
public:
  InducedBallsError(const std::string& what, int component)
      : Error(what), component_(component) {}
  int component() const noexcept { return component_; }

private:
  int component_;
};

// No pair of identical kept twin blocks exists to copy from during lifting.
class LiftInfeasible : public Error {
public:
  using Error::Error;
};

// A map claimed to solve a generated instance lacks the shape the
// construction forces. Indicates a bug upstream (verifier or solver).
class StructuralViolation : public Error {
public:
  using Error::Error;
};

}  // namespace nonclash
