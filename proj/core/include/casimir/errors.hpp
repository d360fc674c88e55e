#pragma once

#include <stdexcept>
#include <string>

namespace casimir {

/// Base class of all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A material model was evaluated outside its domain of definition
/// (e.g. a zero-frequency pole queried at xi = 0).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A multiple-scattering denominator fell below its floor, or the geometry
/// is otherwise degenerate (plates at zero gap, resonant stack).
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// The quadrature did not reach the requested tolerance within its budget.
class NonConvergence : public Error {
 public:
  using Error::Error;
};

/// Config text is syntactically malformed.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Config (or directly constructed value) is well-formed but violates an
/// invariant; the message names the offending field.
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace casimir
