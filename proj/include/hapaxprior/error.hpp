#pragma once

#include <stdexcept>
#include <string>

namespace hapaxprior {

/// Base for failures caused by the data rather than by the caller's
/// arguments (malformed files, undefined estimates, degenerate statistics).
/// Precondition violations throw std::invalid_argument instead.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hapaxprior
