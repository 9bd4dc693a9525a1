#pragma once

#include <stdexcept>
#include <string>

namespace coarse_lab {

/// Argument outside the documented domain of an operation (bad sizes,
/// composite primes, invalid points, non-positive epsilon).
class InputDomainError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// The input is well-formed but lacks a structural property the operation
/// needs, e.g. a disconnected or irregular component.
class StructuralError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A bounded search (rejection sampling) ran out of budget.
class ResourceExhaustedError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An operation's precondition about its arguments failed, e.g. a fixed
/// point where none may exist.
class PreconditionError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// The finite truncation is too small to decide the requested property.
class TruncationInsufficientError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file; carries a location string in the message.
class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace coarse_lab
