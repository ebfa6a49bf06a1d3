#pragma once

// Generalized factorials n!_K and greedy P-orderings of finite sets.

#include <cstdint>
#include <optional>
#include <vector>

#include "uset/field.hpp"
#include "uset/point_set.hpp"

namespace uset {

/// w_P(n) = sum_{i >= 1} floor(n / N(P)^i), the exponent of P in n!_K.
std::int64_t w_ring(const PrimeIdeal& P, std::uint64_t n);

/// n!_K as a product of prime ideals; 0! and 1! are the unit ideal.
FactoredIdeal factorial_ideal(const Field& field, std::uint64_t n);

/// prod_{k=1}^{n} k!_K
FactoredIdeal factorial_product(const Field& field, std::uint64_t n);

/// Tie-breaking among equally good greedy choices.
enum class TieBreak {
  Canonical,         // smallest under canonical_less
  ReverseCanonical,  // largest under canonical_less
};

struct POrdering {
  PrimeIdeal prime;
  std::vector<QuadInt> sequence;
  /// w[m] = v_P(prod_{i<m} (s_m - s_i)); w[0] = 0.
  std::vector<std::int64_t> w_sequence;
};

/// Greedy P-ordering of S of the given length (<= |S|).
POrdering p_ordering_of_set(const PointSet& S, const PrimeIdeal& P, std::size_t length,
                            TieBreak tie = TieBreak::Canonical);

/// First k <= n with w_k(S) != w_P(k), or nullopt when S contains an (n+1)-subset
/// almost uniformly distributed modulo every power of P. Requires |S| >= n+1.
std::optional<std::size_t> first_invariant_divergence(const PointSet& S, const PrimeIdeal& P,
                                                      std::size_t n);

inline bool set_invariants_match_ring(const PointSet& S, const PrimeIdeal& P, std::size_t n) {
  return !first_invariant_divergence(S, P, n).has_value();
}

}  // namespace uset
