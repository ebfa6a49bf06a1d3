#include "uset/universal.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include "uset/errors.hpp"
#include "uset/factorials.hpp"
#include "uset/lattice.hpp"

namespace uset {

namespace {

Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

/// Pairwise coprime integers with the same prime support as the inputs.
std::vector<Integer> coprime_base(std::vector<Integer> work) {
  std::vector<Integer> base;
  while (!work.empty()) {
    Integer x = std::move(work.back());
    work.pop_back();
    if (x == 1) continue;
    bool split = false;
    for (std::size_t k = 0; k < base.size(); ++k) {
      const Integer g = gcd(x, base[k]);
      if (g == 1) continue;
      const Integer b = base[k];
      base.erase(base.begin() + static_cast<std::ptrdiff_t>(k));
      for (Integer y : {g, Integer(b / g), Integer(x / g)})
        if (y != 1) work.push_back(std::move(y));
      split = true;
      break;
    }
    if (!split) base.push_back(std::move(x));
  }
  std::sort(base.begin(), base.end());
  return base;
}

std::size_t count_components(std::size_t n_vertices,
                             const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<std::size_t> parent(n_vertices);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t components = n_vertices;
  for (auto [u, v] : edges) {
    u = find(u);
    v = find(v);
    if (u != v) {
      parent[u] = v;
      --components;
    }
  }
  return components;
}

}  // namespace

Volume volume(const PointSet& S, std::uint64_t factor_bound) {
  Volume v{QuadInt(S.field(), 1), {}};
  for (std::size_t i = 0; i < S.size(); ++i) {
    for (std::size_t j = i + 1; j < S.size(); ++j) {
      const QuadInt d = S[j] - S[i];
      // (s_j - s_i)(s_i - s_j) = -(s_j - s_i)^2
      v.element *= -(d * d);
      v.ideal *= factor_element(d, factor_bound).pow(2);
    }
  }
  return v;
}

Integer volume_norm(const PointSet& S) {
  Integer half = 1;
  for (std::size_t i = 0; i < S.size(); ++i)
    for (std::size_t j = i + 1; j < S.size(); ++j) half *= abs((S[j] - S[i]).norm());
  return half * half;
}

bool is_aud(const PointSet& S, const PrimeIdeal& P, int k) {
  const IdealLattice L = ideal_power_lattice(P, k);
  std::map<std::pair<Integer, Integer>, std::size_t> counts;
  for (const auto& x : S) {
    const QuadInt r = L.reduce(x);
    ++counts[{r.a(), r.b()}];
  }
  const Integer classes = L.det();
  const Integer size(static_cast<unsigned long>(S.size()));
  if (size <= classes) {
    for (const auto& [key, c] : counts)
      if (c > 1) return false;
    return true;
  }
  // More points than classes: every class must be hit floor or ceil times.
  if (Integer(static_cast<unsigned long>(counts.size())) != classes) return false;
  const std::size_t q = Integer(size / classes).get_ui();
  for (const auto& [key, c] : counts)
    if (c != q && c != q + 1) return false;
  return true;
}

VolumeAnalysis::VolumeAnalysis(const PointSet& S, std::uint64_t trial_bound)
    : set_(S), bound_(trial_bound) {
  struct PairData {
    Edge edge;
    QuadInt diff;
    Integer norm;
    Integer cofactor;
  };
  std::vector<PairData> pairs;
  std::set<Integer> rational_primes;
  for (std::size_t i = 0; i < S.size(); ++i) {
    for (std::size_t j = i + 1; j < S.size(); ++j) {
      PairData pd{{i, j}, S[j] - S[i], 0, 1};
      pd.norm = abs(pd.diff.norm());
      auto partial = trial_divide(pd.norm, bound_);
      for (const auto& pp : partial.small) rational_primes.insert(pp.prime);
      pd.cofactor = partial.cofactor;
      pairs.push_back(std::move(pd));
    }
  }

  std::vector<Integer> cofactors;
  for (const auto& pd : pairs)
    if (pd.cofactor != 1) cofactors.push_back(pd.cofactor);
  const Integer b(static_cast<unsigned long>(bound_));
  for (auto& q : coprime_base(std::move(cofactors))) {
    if (q <= b * b || is_probable_prime(q)) {
      rational_primes.insert(q);
      continue;
    }
    CompositeIncidence c{q, {}, 0};
    for (const auto& pd : pairs)
      if (pd.cofactor != 1 && gcd(pd.cofactor, q) != 1) c.edges.push_back(pd.edge);
    c.components = count_components(S.size(), c.edges);
    composites_.push_back(std::move(c));
  }

  for (const auto& p : rational_primes) {
    for (const auto& P : primes_above(S.field(), p)) {
      PrimeIncidence inc{P, 0, {}};
      for (const auto& pd : pairs) {
        if (!mpz_divisible_p(pd.norm.get_mpz_t(), p.get_mpz_t())) continue;
        const std::int64_t v = valuation(pd.diff, P);
        if (v == 0) continue;
        inc.half_exponent += v;
        inc.edges.push_back(pd.edge);
      }
      if (inc.half_exponent > 0) primes_.push_back(std::move(inc));
    }
  }
  std::sort(primes_.begin(), primes_.end(),
            [](const auto& x, const auto& y) { return x.prime < y.prime; });
}

FactoredIdeal VolumeAnalysis::resolved_volume() const {
  FactoredIdeal v;
  for (const auto& inc : primes_) v.add(inc.prime, 2 * inc.half_exponent);
  return v;
}

std::optional<std::size_t> VolumeAnalysis::divergence(const PrimeIncidence& inc,
                                                      std::size_t level) const {
  // Above norm `level` the ring invariants vanish up to `level`, so a witness
  // is just level+1 elements in distinct classes mod P, and the classes are
  // the components of the congruence graph.
  const Integer lv(static_cast<unsigned long>(level));
  if (inc.prime.residue_norm() > lv && count_components(set_.size(), inc.edges) >= level + 1)
    return std::nullopt;
  return first_invariant_divergence(set_, inc.prime, level);
}

UniversalityReport is_n_universal(const PointSet& S, std::size_t n,
                                  const UniversalityOptions& options) {
  UniversalityReport rep;
  rep.n = n;
  rep.set_size = S.size();
  rep.reduction_note =
      "prime ideals not dividing Vol(S) separate all elements of S and are skipped";
  if (S.size() < n + 1) {
    rep.too_small = true;
    return rep;
  }
  if (n == 0 || S.size() < 2) {
    rep.verdict = true;
    return rep;
  }

  // Any prime above the bound has norm > n, so w_P(k) = 0 for k <= n there.
  const VolumeAnalysis A(S, std::max<std::uint64_t>(options.factor_bound, n));
  for (const auto& c : A.composites()) {
    if (c.components < n + 1)
      throw BudgetExceeded("factor bound " + std::to_string(A.trial_bound()) +
                           " exceeded: composite cofactor " + c.q.get_str() +
                           " of a difference norm could hide a prime that merges residue classes");
    rep.unresolved_cofactors.push_back(c.q);
  }
  for (const auto& inc : A.primes()) {
    rep.relevant_primes.push_back(inc.prime);
    if (auto k = A.divergence(inc, n)) rep.failures.push_back({inc.prime, *k});
  }
  rep.resolved_volume = A.resolved_volume();
  rep.verdict = rep.failures.empty();
  return rep;
}

FactoredIdeal optimal_volume(const Field& field, std::size_t n) {
  return factorial_product(field, n).pow(2);
}

bool is_n_optimal(const PointSet& S, const UniversalityOptions& options) {
  if (S.empty()) throw InputError("is_n_optimal: empty set");
  const std::size_t n = S.size() - 1;
  const UniversalityReport rep = is_n_universal(S, n, options);

  const FactoredIdeal half_target = factorial_product(S.field(), n);
  Integer half = 1;
  for (std::size_t i = 0; i < S.size(); ++i)
    for (std::size_t j = i + 1; j < S.size(); ++j) half *= abs((S[j] - S[i]).norm());
  const bool by_volume = half == half_target.norm();
  if (by_volume) {
    ensure(rep.unresolved_cofactors.empty() && rep.resolved_volume == half_target.pow(2),
           "volume norm matches the optimal volume but the factorizations differ");
  }
  ensure(by_volume == rep.verdict,
         "optimality criteria disagree on " + S.to_string() + ": universality says " +
             (rep.verdict ? "yes" : "no") + ", volume says " + (by_volume ? "yes" : "no"));
  return by_volume;
}

bool is_newton_sequence(const std::vector<QuadInt>& seq, const UniversalityOptions& options) {
  if (seq.empty()) throw InputError("is_newton_sequence: empty sequence");
  const PointSet all(seq.front().field(), seq);  // rejects duplicates
  for (std::size_t m = 1; m < all.size(); ++m)
    if (!is_n_universal(all.prefix(m + 1), m, options).verdict) return false;
  return true;
}

}  // namespace uset
