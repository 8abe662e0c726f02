#pragma once

#include <stdexcept>
#include <string>

namespace primepot {

/// Input violates a documented precondition (bad argument, malformed file,
/// inconsistent sizes). Maps to CLI exit code 1.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure could not produce a valid result (node in a chain
/// step, resolution too coarse, no bound states where some were required).
/// Maps to CLI exit code 2.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace primepot
