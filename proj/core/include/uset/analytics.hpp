#pragma once

// Euler-Kronecker constant estimates from factorial asymptotics, the
// Ihara-type lower bound, volume asymptotics and Monte Carlo log-potentials.

#include <cstdint>
#include <utility>
#include <vector>

#include "uset/field.hpp"

namespace uset {

/// Euler-Mascheroni constant. The stored value is cross-checked once against
/// H_n - log n - 1/(2n) + 1/(12 n^2) at n = 10^6; a mismatch throws
/// IntegrityError.
double gamma_mascheroni();

/// H_n - log n, summed smallest terms first.
double harmonic_gap(std::uint64_t n);

/// H_n - log n - 1/(2n) + 1/(12 n^2).
double accelerated_gamma(std::uint64_t n);

/// log N(n!_K) from the exact integer norm.
double log_norm_factorial(const Field& field, std::uint64_t n);

struct GammaEstimate {
  Field field = Field::rationals();
  std::uint64_t n = 0;
  /// (n log n - log N(n!_K))/n - 1 + gamma_Q
  double estimate = 0.0;
  double gamma_q = 0.0;
  /// -3/2 - gamma_K + gamma_Q - (1/2) log|disc|, with gamma_K = estimate.
  double c_dk = 0.0;
  /// (m, estimate at m) for m = n/4, n/2, n.
  std::vector<std::pair<std::uint64_t, double>> convergence;
};

/// Requires n >= 2.
GammaEstimate gamma_estimate(const Field& field, std::uint64_t n);

/// Estimate at a single n without the convergence diagnostics.
double gamma_estimate_value(const Field& field, std::uint64_t n);

struct BoundCheck {
  double bound = 0.0;
  double estimate = 0.0;
  double tolerance = 0.0;
  bool satisfied = false;
  /// The bound is only a theorem for totally real fields.
  bool hypothesis_holds = false;
};

/// gamma_K >= -(1/2) log|disc| + (3/2) deg - 3/2 + gamma_Q, tested as
/// estimate >= bound - tolerance.
BoundCheck ihara_bound_check(const Field& field, std::uint64_t n, double tolerance = 0.05);

struct VolumeAsymptotic {
  /// 2 sum_{k<=n} log N(k!_K), the log-norm of an n-optimal volume.
  double exact = 0.0;
  /// n^2 log n - n^2/2 - n^2 (1 + gamma_K - gamma_Q)
  double formula = 0.0;
  double gap = 0.0;
  /// gap / n^2
  double relative_gap = 0.0;
  double gamma_k = 0.0;
};

/// gamma_K is taken from gamma_estimate at `gamma_n`.
VolumeAsymptotic vol_asymptotic_check(const Field& field, std::uint64_t n,
                                      std::uint64_t gamma_n = 100000);

/// Axis-aligned box in R^d.
struct Box {
  std::vector<double> lo, hi;
  double measure() const;
};

struct MonteCarlo {
  double value = 0.0;
  double stderr_ = 0.0;
  std::uint64_t samples = 0;
};

/// Monte Carlo estimate of the double integral over U x U of log||x - y||,
/// where ||z|| = prod |z_i| and U is a union of disjoint boxes. Samples are
/// stratified over box pairs and drawn in fixed-size shards with their own
/// seeds, so the result does not depend on `threads`.
MonteCarlo log_potential_integral(const std::vector<Box>& U, int d, std::uint64_t samples,
                                  std::uint64_t seed, unsigned threads = 1);

/// lambda * U
std::vector<Box> scale_boxes(const std::vector<Box>& U, double lambda);

struct LogInequality {
  double lhs = 0.0;
  double lhs_stderr = 0.0;
  double measure = 0.0;
  double c_dk = 0.0;
  /// m(U)^2 (c_{d,K} + log m(U))
  double rhs = 0.0;
  double tolerance = 0.0;
  bool satisfied = false;
};

/// lhs >= m(U)^2 (c_{2,K} + log m(U)) - tolerance for a real quadratic K.
LogInequality log_ineq_check(const Field& field, const std::vector<Box>& U,
                             std::uint64_t samples, std::uint64_t seed,
                             std::uint64_t gamma_n = 100000, double tolerance = 0.05,
                             unsigned threads = 1);

}  // namespace uset
