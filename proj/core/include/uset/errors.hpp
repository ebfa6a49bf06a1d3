#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace uset {

/// Malformed or out-of-contract input (bad field, duplicate points, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An internal cross-check disagreed. Always a bug or a broken invariant.
class IntegrityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A configured resource guard (factor bound, residue guard, node budget)
/// was exceeded.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Valuation of zero was requested.
class InfiniteValuation : public std::domain_error {
 public:
  InfiniteValuation() : std::domain_error("valuation of zero is infinite") {}
};

/// Throws IntegrityError with `what` unless `cond` holds.
void ensure(bool cond, const std::string& what);

}  // namespace uset
