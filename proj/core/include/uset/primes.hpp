#pragma once

// Rational-integer helpers: sieving, trial-division factoring, square roots
// modulo a prime.

#include <gmpxx.h>

#include <cstdint>
#include <utility>
#include <vector>

namespace uset {

using Integer = mpz_class;

/// Default trial-division bound used when factoring norms.
inline constexpr std::uint64_t kDefaultFactorBound = 1u << 20;

/// All primes <= bound, ascending. Results are cached per process; the
/// returned reference stays valid for the program's lifetime.
const std::vector<std::uint32_t>& primes_up_to(std::uint64_t bound);

struct PrimePower {
  Integer prime;
  int exponent = 0;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Outcome of trial division: small prime factors plus the remaining
/// cofactor, all of whose prime factors exceed `bound`.
struct PartialFactorization {
  std::vector<PrimePower> small;
  Integer cofactor = 1;
};

PartialFactorization trial_divide(const Integer& n, std::uint64_t bound);

/// Full factorization of |n| (n != 0). A leftover cofactor below bound^2 is
/// prime; above that it is accepted only if it passes a strong probable-prime
/// test, otherwise BudgetExceeded is thrown.
std::vector<PrimePower> factor_integer(const Integer& n,
                                       std::uint64_t bound = kDefaultFactorBound);

bool is_probable_prime(const Integer& n);

/// p-adic valuation of n != 0.
int valuation_p(const Integer& n, const Integer& p);

/// A square root of a modulo the odd prime p (Tonelli-Shanks). Requires a to
/// be a quadratic residue.
Integer sqrt_mod_prime(const Integer& a, const Integer& p);

/// Floor division with nonnegative remainder for b > 0.
Integer floor_div(const Integer& a, const Integer& b);
Integer mod_floor(const Integer& a, const Integer& b);

}  // namespace uset
