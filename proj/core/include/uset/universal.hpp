#pragma once

// Volumes, almost uniform distribution, n-universality, n-optimality and
// Newton sequences.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "uset/field.hpp"
#include "uset/point_set.hpp"

namespace uset {

struct Volume {
  /// prod over ordered pairs s != s' of (s - s').
  QuadInt element;
  /// The principal ideal it generates.
  FactoredIdeal ideal;
};

/// Vol(S). For |S| < 2 this is the unit element and the unit ideal.
Volume volume(const PointSet& S, std::uint64_t factor_bound = kDefaultFactorBound);

/// |N(Vol(S))| computed from pairwise difference norms (no factoring).
Integer volume_norm(const PointSet& S);

/// Residue-class counts of S modulo P^k differ by at most one, empty classes
/// included. Classes are found by reduction into the HNF of P^k, so nothing
/// is enumerated.
bool is_aud(const PointSet& S, const PrimeIdeal& P, int k);

/// Prime ideals dividing Vol(S), found by trial division of the pairwise
/// difference norms. Cofactors without a factor below the trial bound are
/// split into a coprime base; prime base elements are resolved like small
/// primes, composite ones are kept with the pairs they touch.
class VolumeAnalysis {
 public:
  using Edge = std::pair<std::size_t, std::size_t>;

  struct PrimeIncidence {
    PrimeIdeal prime;
    /// v_P of the product over unordered pairs (half of v_P(Vol)).
    std::int64_t half_exponent = 0;
    /// Index pairs congruent modulo P.
    std::vector<Edge> edges;
  };

  struct CompositeIncidence {
    Integer q;
    /// Index pairs whose difference norm shares a factor with q.
    std::vector<Edge> edges;
    /// Connected components of S under those edges; a lower bound for the
    /// number of residue classes of S modulo any prime above a factor of q.
    std::size_t components = 0;
  };

  /// Prime ideals of norm above `trial_bound` only come from cofactors.
  VolumeAnalysis(const PointSet& S, std::uint64_t trial_bound);

  const PointSet& set() const { return set_; }
  std::uint64_t trial_bound() const { return bound_; }
  const std::vector<PrimeIncidence>& primes() const { return primes_; }
  const std::vector<CompositeIncidence>& composites() const { return composites_; }
  FactoredIdeal resolved_volume() const;

  /// First k <= level where the greedy invariant of S at P exceeds w_P(k);
  /// nullopt when S has a witness (level+1)-subset. Requires |S| >= level+1.
  std::optional<std::size_t> divergence(const PrimeIncidence& P, std::size_t level) const;

 private:
  PointSet set_;
  std::uint64_t bound_;
  std::vector<PrimeIncidence> primes_;
  std::vector<CompositeIncidence> composites_;
};

struct UniversalityOptions {
  /// Trial-division bound for difference norms; raised to n when smaller.
  std::uint64_t factor_bound = kDefaultFactorBound;
};

struct UniversalityFailure {
  PrimeIdeal prime;
  /// First k <= n at which the greedy invariant exceeds w_P(k).
  std::size_t k;
};

struct UniversalityReport {
  bool verdict = false;
  std::size_t n = 0;
  std::size_t set_size = 0;
  /// |S| < n+1: no (n+1)-subset exists at all.
  bool too_small = false;
  /// Every prime ideal dividing Vol(S) that was resolved, ascending.
  std::vector<PrimeIdeal> relevant_primes;
  std::vector<UniversalityFailure> failures;
  /// Composite cofactors of difference norms left unfactored because every
  /// prime they could contain already sees at least n+1 classes.
  std::vector<Integer> unresolved_cofactors;
  /// Factorization of Vol(S) restricted to the resolved primes.
  FactoredIdeal resolved_volume;
  /// Primes not dividing Vol(S) separate all of S, so they are skipped.
  std::string reduction_note;
};

UniversalityReport is_n_universal(const PointSet& S, std::size_t n,
                                  const UniversalityOptions& options = {});

/// prod_{k<=n} k!_K squared, the volume of any n-optimal set.
FactoredIdeal optimal_volume(const Field& field, std::size_t n);

/// S is n-optimal for n = |S| - 1. Both the universality verdict and the
/// volume identity are computed; disagreement raises IntegrityError.
bool is_n_optimal(const PointSet& S, const UniversalityOptions& options = {});

/// Every (m+1)-prefix is m-universal. Duplicates raise InputError.
bool is_newton_sequence(const std::vector<QuadInt>& seq,
                        const UniversalityOptions& options = {});

}  // namespace uset
