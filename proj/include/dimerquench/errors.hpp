#pragma once

#include <stdexcept>

namespace dimerquench {

/// Raised when a request would materialize a state or table beyond the
/// configured memory bounds.
class SizeLimitError : public std::length_error {
  public:
    using std::length_error::length_error;
};

/// Raised for closed-form requests outside the set of (n, delta) pairs with
/// a known expression.
class NotCoveredError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

} // namespace dimerquench
