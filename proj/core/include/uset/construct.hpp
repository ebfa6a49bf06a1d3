#pragma once

// Incremental construction of a chain E_0 ⊂ E_1 ⊂ ... where E_n is
// n-universal with n+2 elements.

#include <cstdint>
#include <utility>
#include <vector>

#include "uset/field.hpp"
#include "uset/lattice.hpp"
#include "uset/point_set.hpp"

namespace uset {

/// How large a power of each CRT prime the new element is pinned to.
enum class ExponentRule {
  /// The smallest m with N(P)^m >= n+2. Past that level the witness subset
  /// already has an empty class, so deeper congruences change nothing.
  Stabilized,
  /// nu_P + 1 where nu_P is the largest P-power dividing a difference in
  /// E ∪ {x_P}. Coordinates grow very fast; meant for small n.
  FullValuation,
};

struct ConstructionOptions {
  ExponentRule exponent_rule = ExponentRule::Stabilized;
  /// Failing primes of norm <= this limit are pinned by CRT; larger ones are
  /// handled by screening candidates. 0 picks default_crt_norm_limit(n).
  /// Ignored under FullValuation, which pins every failing prime.
  std::uint64_t crt_norm_limit = 0;
  Reduction reduction = Reduction::Short;
  std::uint64_t residue_guard = kDefaultResidueGuard;
  std::uint64_t factor_bound = kDefaultFactorBound;
  /// Cap on candidates x0 + lambda tried per step.
  std::uint64_t max_candidates = 200000;
};

std::uint64_t default_crt_norm_limit(std::size_t n);

/// One step E (n-universal, n+2 elements) -> E ∪ {x} ((n+1)-universal).
struct ConstructionStep {
  std::size_t n = 0;
  /// Primes dividing Vol(E).
  std::vector<PrimeIdeal> bad_primes;
  /// The subset of bad_primes at which E alone is not yet a witness at level n+1.
  std::vector<PrimeIdeal> refined_primes;
  /// Congruences x = x_P (mod P^m) solved by CRT.
  std::vector<Congruence> congruences;
  /// Refined primes left to candidate screening.
  std::vector<PrimeIdeal> screened_primes;
  /// Norm of the CRT modulus.
  Integer modulus_norm = 1;
  QuadInt crt_solution;
  QuadInt chosen;
  /// 0-based index of `chosen` in the candidate enumeration.
  std::uint64_t candidate_index = 0;
  /// Candidates whose certification hit the factor bound.
  std::uint64_t candidates_over_budget = 0;
  /// max(|a|, |b|) of the new element.
  Integer magnitude = 0;
  /// log N(Vol(E ∪ {x})) - log N(prod_{k=1}^{n+2} k!_K)
  double log_excess = 0.0;

  ConstructionStep() : crt_solution(Field::rationals()), chosen(Field::rationals()) {}
};

struct ConstructionTrace {
  Field field = Field::rationals();
  ConstructionOptions options;
  /// chain[m] = E_m, m+2 elements, certified m-universal.
  std::vector<PointSet> chain;
  std::vector<ConstructionStep> steps;
};

/// Requires E to be n-universal with exactly n+2 elements. The result is
/// certified with is_n_universal before it is returned.
std::pair<QuadInt, ConstructionStep> extend_universal(const PointSet& E, std::size_t n,
                                                      const ConstructionOptions& options = {});

/// E_0 = {0, 1} extended up to E_n.
ConstructionTrace build_universal(const Field& field, std::size_t n,
                                  const ConstructionOptions& options = {});

}  // namespace uset
