#include "uset/construct.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "uset/errors.hpp"
#include "uset/factorials.hpp"
#include "uset/universal.hpp"

namespace uset {

namespace {

std::int64_t capped_valuation(const QuadInt& y, const PrimeIdeal& P, std::int64_t cap) {
  if (y.is_zero()) return cap;
  return std::min(cap, valuation(y, P));
}

/// Smallest m with N(P)^m >= count.
int stabilization_level(const PrimeIdeal& P, std::size_t count) {
  const Integer c(static_cast<unsigned long>(count));
  Integer q = P.residue_norm();
  int m = 1;
  while (q < c) {
    q *= P.residue_norm();
    ++m;
  }
  return m;
}

/// Offsets (i, j) with max(|i|, |j|) = r, in canonical order.
std::vector<std::pair<long, long>> ring_offsets(long r, bool rational) {
  std::vector<std::pair<long, long>> out;
  if (rational) {
    if (r == 0) return {{0, 0}};
    return {{-r, 0}, {r, 0}};
  }
  for (long i = -r; i <= r; ++i)
    for (long j = -r; j <= r; ++j)
      if (std::max(std::labs(i), std::labs(j)) == r) out.emplace_back(i, j);
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    const long sx = std::labs(x.first) + std::labs(x.second);
    const long sy = std::labs(y.first) + std::labs(y.second);
    if (sx != sy) return sx < sy;
    return x < y;
  });
  return out;
}

struct ScreenedPrime {
  PrimeIdeal prime;
  std::vector<QuadInt> witness;
};

}  // namespace

std::uint64_t default_crt_norm_limit(std::size_t n) { return 4 * (n + 2); }

std::pair<QuadInt, ConstructionStep> extend_universal(const PointSet& E, std::size_t n,
                                                      const ConstructionOptions& options) {
  if (E.size() != n + 2)
    throw InputError("extend_universal: expected " + std::to_string(n + 2) +
                     " elements, got " + std::to_string(E.size()));
  if (!is_n_universal(E, n, {options.factor_bound}).verdict)
    throw InputError("extend_universal: " + E.to_string() + " is not " + std::to_string(n) +
                     "-universal");
  const Field& f = E.field();
  const std::size_t level = n + 1;
  const std::uint64_t limit =
      options.crt_norm_limit ? options.crt_norm_limit : default_crt_norm_limit(n);
  const Integer crt_limit(static_cast<unsigned long>(std::max<std::uint64_t>(limit, level)));
  const bool pin_all = options.exponent_rule == ExponentRule::FullValuation;

  ConstructionStep step;
  step.n = n;
  const VolumeAnalysis A(E, std::max<std::uint64_t>(options.factor_bound, level));
  for (const auto& c : A.composites())
    if (c.components < level)
      throw BudgetExceeded("factor bound exceeded at step " + std::to_string(n) +
                           ": composite cofactor " + c.q.get_str() + " is not separable");

  std::vector<ScreenedPrime> screened;
  for (const auto& inc : A.primes()) {
    step.bad_primes.push_back(inc.prime);
    if (!A.divergence(inc, level)) continue;
    const PrimeIdeal& P = inc.prime;
    step.refined_primes.push_back(P);

    const POrdering ord = p_ordering_of_set(E, P, n + 1);
    for (std::size_t k = 0; k <= n; ++k)
      ensure(ord.w_sequence[k] == w_ring(P, k),
             "extend_universal: input set is not " + std::to_string(n) + "-universal at " +
                 P.to_string());
    const std::int64_t target = w_ring(P, level);

    if (!pin_all && P.residue_norm() > crt_limit) {
      screened.push_back({P, ord.sequence});
      step.screened_primes.push_back(P);
      continue;
    }

    // Some residue class mod P^m0 holds no witness element, so the witness
    // extended by x has a fixed valuation sum for every lift of the residue.
    const int m0 = stabilization_level(P, n + 2);
    std::optional<QuadInt> pick;
    for (const auto& r : residues(P, m0, options.residue_guard)) {
      std::int64_t sum = 0;
      for (const auto& w : ord.sequence) sum += capped_valuation(r - w, P, m0);
      if (sum == target) {
        pick = r;
        break;
      }
    }
    ensure(pick.has_value(), "no residue extends the witness at " + P.to_string());
    int exponent = m0;
    if (pin_all) {
      std::int64_t nu = 0;
      std::vector<QuadInt> pts(E.begin(), E.end());
      pts.push_back(*pick);
      for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
          if (!(pts[i] == pts[j])) nu = std::max(nu, valuation(pts[j] - pts[i], P));
      exponent = std::max<int>(m0, static_cast<int>(nu) + 1);
    }
    step.congruences.push_back({*pick, P, exponent});
  }

  IdealLattice modulus = IdealLattice::unit(f);
  QuadInt x0(f);
  if (!step.congruences.empty()) {
    auto sol = crt_solve_with_modulus(step.congruences, options.reduction);
    x0 = sol.x;
    modulus = sol.modulus;
  }
  step.modulus_norm = modulus.det();
  step.crt_solution = x0;
  const auto [u, v] = modulus.short_basis();

  std::uint64_t index = 0;
  for (long r = 0;; ++r) {
    for (const auto& [i, j] : ring_offsets(r, f.is_rational())) {
      if (index >= options.max_candidates)
        throw BudgetExceeded("extend_universal: no certified candidate among the first " +
                             std::to_string(options.max_candidates) + " at step " +
                             std::to_string(n));
      const std::uint64_t this_index = index++;
      QuadInt x = x0 + QuadInt(f, i) * u + QuadInt(f, j) * v;
      if (E.contains(x)) continue;

      bool ok = true;
      for (const auto& s : screened) {
        for (const auto& w : s.witness) {
          if (valuation(x - w, s.prime) != 0) {
            ok = false;
            break;
          }
        }
        if (!ok) break;
      }
      for (std::size_t c = 0; ok && c < A.composites().size(); ++c)
        for (const auto& e : E)
          if (gcd(abs((x - e).norm()), A.composites()[c].q) != 1) {
            ok = false;
            break;
          }
      if (!ok) continue;

      const PointSet next = E.with(x);
      UniversalityReport rep;
      try {
        rep = is_n_universal(next, level, {options.factor_bound});
      } catch (const BudgetExceeded&) {
        ++step.candidates_over_budget;
        continue;
      }
      ensure(rep.verdict, "constructed set " + next.to_string() + " failed certification at level " +
                              std::to_string(level));
      step.chosen = x;
      step.candidate_index = this_index;
      step.magnitude = std::max(abs(x.a()), abs(x.b()));
      step.log_excess = log_integer(volume_norm(next)) -
                        factorial_product(f, level + 1).log_norm();
      return {x, step};
    }
  }
}

ConstructionTrace build_universal(const Field& field, std::size_t n,
                                  const ConstructionOptions& options) {
  ConstructionTrace trace;
  trace.field = field;
  trace.options = options;
  PointSet E = PointSet::from_coords(field, {{0, 0}, {1, 0}});
  ensure(is_n_universal(E, 0).verdict, "E_0 is not 0-universal");
  trace.chain.push_back(E);
  for (std::size_t m = 0; m < n; ++m) {
    auto [x, step] = extend_universal(E, m, options);
    E.insert(x);
    trace.chain.push_back(E);
    trace.steps.push_back(std::move(step));
  }
  return trace;
}

}  // namespace uset
