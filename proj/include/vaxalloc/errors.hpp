#pragma once

#include <stdexcept>
#include <string>

namespace vaxalloc {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed dataset document (not JSON, or JSON that does not match the schema).
class ParseError : public Error {
 public:
  using Error::Error;
};

// A dataset that parses but breaks a domain invariant. `offending_id()` names
// the entity at fault (a locality/centre/union council/node id or "edge[i]").
class ValidationError : public Error {
 public:
  ValidationError(std::string offending_id, const std::string& message);
  const std::string& offending_id() const noexcept { return offending_id_; }

 private:
  std::string offending_id_;
};

// No road path joins two network nodes.
class Unreachable : public Error {
 public:
  Unreachable(std::string from, std::string to);
  const std::string& from() const noexcept { return from_; }
  const std::string& to() const noexcept { return to_; }

 private:
  std::string from_;
  std::string to_;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// A planning program cannot be formed from the inputs (e.g. a union council
// with need but no admissible centre).
class BuildError : public Error {
 public:
  using Error::Error;
};

// A travel time needed by the planning program is absent from the matrix.
class MissingEntry : public Error {
 public:
  using Error::Error;
};

// Argument outside the domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace vaxalloc
