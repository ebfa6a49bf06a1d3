#pragma once

// Random-walk construction of universal sets: n+d independent lattice walks,
// scaled and shifted onto fixed base points, plus the exact Fourier
// quantities that control how often such a set fails.

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "uset/field.hpp"
#include "uset/point_set.hpp"

namespace uset {

/// How the walks are scaled before they are added to the base points.
enum class ScalingMode {
  /// Smallest rational integer divisible by P^{m_P} for every P with N(P) <= L.
  Conductor,
  /// L! itself. Only for L <= 12.
  Factorial,
};

/// Smallest m with N(P)^m >= n+1. Past this power n+1 distinct residues stay
/// distinct, so nothing deeper needs checking.
int stabilization_exponent(const PrimeIdeal& P, std::size_t n);

/// The scaling constant Lambda for the given mode.
Integer scaling_modulus(const Field& field, std::size_t n, std::uint64_t L, ScalingMode mode);

/// Deterministic base points a_1..a_{n+d}: the first n+1 are almost uniformly
/// distributed modulo P^j for every P with N(P) <= L and j <= m_P, found by a
/// pruned depth-first search in canonical order over growing boxes. The
/// remaining d-1 are the next canonical points. Requires L > 2(n+1).
std::vector<QuadInt> find_base_points(const Field& field, std::size_t n, std::uint64_t L);

struct WalkConfig {
  Field field = Field::rationals();
  std::size_t n = 1;
  std::uint64_t L = 5;
  std::uint64_t M = 100;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 1;
  ScalingMode mode = ScalingMode::Conductor;
  /// Empty means find_base_points.
  std::vector<QuadInt> base_points;
  /// 0 means one per hardware thread.
  unsigned threads = 1;
};

/// Checks the invariants and fills in base points when absent. Throws
/// InputError on violation.
WalkConfig validated(WalkConfig config);

struct SimulationResult {
  WalkConfig config;
  Integer modulus = 1;
  std::uint64_t failures = 0;
  double p_hat = 0.0;
  double stderr_ = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  /// Failing trials keyed by the smallest failing prime.
  std::map<PrimeIdeal, std::uint64_t> failures_by_prime;
};

/// Runs config.trials experiments. Trial t draws from its own stream seeded by
/// derive_seed(seed, {t}), so the result is the same for any thread count.
SimulationResult simulate(const WalkConfig& config);

/// Wilson score interval for k successes in n trials.
std::pair<double, double> wilson_interval(std::uint64_t k, std::uint64_t n, double z = 1.96);

/// Endpoint of an M-step walk with steps +-w_1 +- ... +- w_d, as coordinates.
std::vector<long> walk_endpoint(int d, std::uint64_t M, std::mt19937_64& rng);

/// Fraction of `samples` walk endpoints whose sup-coordinate exceeds
/// scale * M^{1/2} (log M)^{1/(2d)}.
double tail_fraction(int d, std::uint64_t M, std::uint64_t samples, std::uint64_t seed,
                     double scale = 1.0);

/// (1/p) sum_{a<p} |cos(2 pi a / p)|^M
long double fourier_bound(std::uint64_t p, std::uint64_t M);

/// The same quantity from the walk distribution mod p, built by repeated
/// convolution and transformed with a direct DFT.
long double convolution_oracle(std::uint64_t p, std::uint64_t M);

/// Distribution of the +-1 walk mod p after M steps.
std::vector<long double> walk_distribution_mod(std::uint64_t p, std::uint64_t M);

struct HausdorffYoung {
  /// sum_g mu(g)^q
  long double lhs = 0;
  /// ((1/p) sum_chi |mu^(chi)|^{q'})^{q-1}, 1/q + 1/q' = 1
  long double rhs = 0;
};

/// Both sides of the Hausdorff-Young inequality for the walk mod p. q >= 2.
HausdorffYoung hausdorff_young(std::uint64_t p, std::uint64_t M, double q);

/// (sum_chi |mu_P^(chi)|) / N(P) for the walk on O_K projected to O_K/P,
/// computed exactly from the characters of the residue field.
long double prime_fourier_ratio(const PrimeIdeal& P, std::uint64_t M);

/// sum over L < N(P) <= norm_cap of prime_fourier_ratio^m. The constant in
/// front of it is not explicit, so this is a shape only.
long double prime_sum_shape(const Field& field, std::uint64_t L, std::uint64_t M, int m,
                            std::uint64_t norm_cap);

/// (1/N + M^{-1/2})^m, again up to an unspecified constant.
double est1_shape(double N, double M, int m);

/// Families of n disjoint non-empty blocks covering {0..n+m-1}.
std::vector<std::vector<std::vector<int>>> m_partitions(int n, int m);

struct CollisionCheck {
  std::size_t partitions = 0;
  /// Probability that xi_1..xi_{n+m} take at most n distinct values.
  long double exact = 0;
  /// sum over m-partitions of P[xi constant on every block]
  long double union_bound = 0;
  /// The same with each block term replaced by its AM-GM upper bound.
  long double amgm_bound = 0;
};

/// Exhaustive over (Z/q)^{n+m}; mus[j] is the distribution of xi_j. Needs
/// n+m <= 6 and q^{n+m} <= 10^7.
CollisionCheck collision_check(int n, int m, const std::vector<std::vector<long double>>& mus);

}  // namespace uset
