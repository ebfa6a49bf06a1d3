#include "uset/factorials.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "uset/errors.hpp"

namespace uset {

std::int64_t w_ring(const PrimeIdeal& P, std::uint64_t n) {
  const Integer N = P.residue_norm();
  const Integer nn(static_cast<unsigned long>(n));
  std::int64_t total = 0;
  for (Integer q = N; q <= nn; q *= N) total += Integer(nn / q).get_si();
  return total;
}

FactoredIdeal factorial_ideal(const Field& field, std::uint64_t n) {
  FactoredIdeal out;
  if (n < 2) return out;
  for (const auto& P : primes_up_to_norm(field, n)) out.add(P, w_ring(P, n));
  return out;
}

FactoredIdeal factorial_product(const Field& field, std::uint64_t n) {
  // sum_{k<=n} floor(k/q) = q m(m-1)/2 + m(n - qm + 1) with m = floor(n/q).
  FactoredIdeal out;
  if (n < 2) return out;
  const Integer nn(static_cast<unsigned long>(n));
  for (const auto& P : primes_up_to_norm(field, n)) {
    Integer total = 0;
    for (Integer q = P.residue_norm(); q <= nn; q *= P.residue_norm()) {
      const Integer m = nn / q;
      total += q * m * (m - 1) / 2 + m * (nn - q * m + 1);
    }
    out.add(P, total.get_si());
  }
  return out;
}

POrdering p_ordering_of_set(const PointSet& S, const PrimeIdeal& P, std::size_t length,
                            TieBreak tie) {
  if (!(S.field() == P.field())) throw InputError("p_ordering_of_set: field mismatch");
  if (length > S.size())
    throw InputError("p-ordering length " + std::to_string(length) + " exceeds |S| = " +
                     std::to_string(S.size()));
  std::vector<QuadInt> pool(S.begin(), S.end());
  std::sort(pool.begin(), pool.end(), canonical_less);
  if (tie == TieBreak::ReverseCanonical) std::reverse(pool.begin(), pool.end());

  POrdering out{P, {}, {}};
  std::vector<std::int64_t> acc(pool.size(), 0);
  std::vector<bool> used(pool.size(), false);
  for (std::size_t m = 0; m < length; ++m) {
    std::size_t best = pool.size();
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (used[i]) continue;
      if (best == pool.size() || acc[i] < acc[best]) best = i;
    }
    used[best] = true;
    out.sequence.push_back(pool[best]);
    out.w_sequence.push_back(acc[best]);
    if (m + 1 == length) break;
    for (std::size_t i = 0; i < pool.size(); ++i)
      if (!used[i]) acc[i] += valuation(pool[i] - pool[best], P);
  }
  return out;
}

std::optional<std::size_t> first_invariant_divergence(const PointSet& S, const PrimeIdeal& P,
                                                      std::size_t n) {
  if (S.size() < n + 1)
    throw InputError("invariant check needs |S| >= n+1 (|S| = " + std::to_string(S.size()) +
                     ", n = " + std::to_string(n) + ")");
  const auto ord = p_ordering_of_set(S, P, n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    const std::int64_t ring = w_ring(P, k);
    ensure(ord.w_sequence[k] >= ring, "set invariant below the ring invariant at " +
                                          P.to_string() + ", k = " + std::to_string(k));
    if (ord.w_sequence[k] != ring) return k;
  }
  return std::nullopt;
}

}  // namespace uset
