#include "uset/analytics.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <random>
#include <string>
#include <thread>

#include "uset/errors.hpp"
#include "uset/factorials.hpp"
#include "uset/rng.hpp"

namespace uset {

namespace {

constexpr double kGammaQ = 0.57721566490153286060651209;
constexpr std::uint64_t kShard = 1u << 16;

}  // namespace

double harmonic_gap(std::uint64_t n) {
  if (n == 0) throw InputError("harmonic_gap needs n >= 1");
  long double h = 0.0L;
  for (std::uint64_t k = n; k >= 1; --k) h += 1.0L / static_cast<long double>(k);
  return static_cast<double>(h - std::log(static_cast<long double>(n)));
}

double accelerated_gamma(std::uint64_t n) {
  const long double x = static_cast<long double>(n);
  return static_cast<double>(static_cast<long double>(harmonic_gap(n)) - 1.0L / (2.0L * x) +
                             1.0L / (12.0L * x * x));
}

double gamma_mascheroni() {
  static const double checked = [] {
    const double approx = accelerated_gamma(1000000);
    ensure(std::fabs(approx - kGammaQ) < 1e-10,
           "stored Euler-Mascheroni constant disagrees with the harmonic-sum limit");
    return kGammaQ;
  }();
  return checked;
}

double log_norm_factorial(const Field& field, std::uint64_t n) {
  return factorial_ideal(field, n).log_norm();
}

double gamma_estimate_value(const Field& field, std::uint64_t n) {
  if (n < 2) throw InputError("gamma_estimate needs n >= 2");
  const double x = static_cast<double>(n);
  return (x * std::log(x) - log_norm_factorial(field, n)) / x - 1.0 + gamma_mascheroni();
}

GammaEstimate gamma_estimate(const Field& field, std::uint64_t n) {
  GammaEstimate g;
  g.field = field;
  g.n = n;
  g.gamma_q = gamma_mascheroni();
  g.estimate = gamma_estimate_value(field, n);
  for (std::uint64_t m : {n / 4, n / 2})
    if (m >= 2) g.convergence.emplace_back(m, gamma_estimate_value(field, m));
  g.convergence.emplace_back(n, g.estimate);
  g.c_dk = -1.5 - g.estimate + g.gamma_q -
           0.5 * std::log(std::fabs(static_cast<double>(field.discriminant())));
  return g;
}

BoundCheck ihara_bound_check(const Field& field, std::uint64_t n, double tolerance) {
  BoundCheck b;
  b.tolerance = tolerance;
  b.hypothesis_holds = field.is_totally_real();
  b.bound = -0.5 * std::log(std::fabs(static_cast<double>(field.discriminant()))) +
            1.5 * field.degree() - 1.5 + gamma_mascheroni();
  b.estimate = gamma_estimate_value(field, n);
  b.satisfied = b.estimate >= b.bound - tolerance;
  return b;
}

VolumeAsymptotic vol_asymptotic_check(const Field& field, std::uint64_t n, std::uint64_t gamma_n) {
  if (n < 1) throw InputError("vol_asymptotic_check needs n >= 1");
  VolumeAsymptotic v;
  v.exact = n < 2 ? 0.0 : 2.0 * factorial_product(field, n).log_norm();
  v.gamma_k = gamma_estimate_value(field, gamma_n);
  const double x = static_cast<double>(n);
  v.formula = x * x * std::log(x) - x * x / 2.0 - x * x * (1.0 + v.gamma_k - gamma_mascheroni());
  v.gap = v.exact - v.formula;
  v.relative_gap = v.gap / (x * x);
  return v;
}

double Box::measure() const {
  double m = 1.0;
  for (std::size_t i = 0; i < lo.size(); ++i) m *= hi[i] - lo[i];
  return m;
}

std::vector<Box> scale_boxes(const std::vector<Box>& U, double lambda) {
  if (!(lambda > 0)) throw InputError("scale factor must be positive");
  std::vector<Box> out = U;
  for (auto& b : out) {
    for (auto& x : b.lo) x *= lambda;
    for (auto& x : b.hi) x *= lambda;
  }
  return out;
}

MonteCarlo log_potential_integral(const std::vector<Box>& U, int d, std::uint64_t samples,
                                  std::uint64_t seed, unsigned threads) {
  if (d != 1 && d != 2) throw InputError("log_potential_integral supports d = 1 or 2");
  if (U.empty()) throw InputError("log_potential_integral: no boxes");
  if (samples < 2) throw InputError("log_potential_integral needs at least 2 samples");
  for (const auto& b : U) {
    if (b.lo.size() != static_cast<std::size_t>(d) || b.hi.size() != static_cast<std::size_t>(d))
      throw InputError("box dimension does not match d = " + std::to_string(d));
    for (int i = 0; i < d; ++i)
      if (!(b.hi[i] > b.lo[i])) throw InputError("box has zero measure");
  }
  for (std::size_t i = 0; i < U.size(); ++i)
    for (std::size_t j = i + 1; j < U.size(); ++j) {
      bool overlap = true;
      for (int k = 0; k < d; ++k)
        if (U[i].hi[k] <= U[j].lo[k] || U[j].hi[k] <= U[i].lo[k]) overlap = false;
      if (overlap) throw InputError("boxes overlap");
    }

  // Stratify over ordered box pairs, samples proportional to m(A) m(B).
  struct Stratum {
    std::size_t a, b;
    double weight;
    std::uint64_t count;
  };
  std::vector<Stratum> strata;
  double total_w = 0;
  for (std::size_t a = 0; a < U.size(); ++a)
    for (std::size_t b = 0; b < U.size(); ++b) {
      const double w = U[a].measure() * U[b].measure();
      strata.push_back({a, b, w, 0});
      total_w += w;
    }
  for (auto& s : strata)
    s.count = std::max<std::uint64_t>(
        2, static_cast<std::uint64_t>(std::llround(static_cast<double>(samples) * s.weight / total_w)));

  struct Job {
    std::size_t stratum;
    std::uint64_t shard, count;
  };
  std::vector<Job> jobs;
  for (std::size_t s = 0; s < strata.size(); ++s)
    for (std::uint64_t k = 0, done = 0; done < strata[s].count; ++k) {
      const std::uint64_t c = std::min(kShard, strata[s].count - done);
      jobs.push_back({s, k, c});
      done += c;
    }

  std::vector<double> sum(jobs.size(), 0.0), sumsq(jobs.size(), 0.0);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t j = next.fetch_add(1);
      if (j >= jobs.size()) return;
      const Job& job = jobs[j];
      const Box& A = U[strata[job.stratum].a];
      const Box& B = U[strata[job.stratum].b];
      std::mt19937_64 rng(derive_seed(seed, {job.stratum, job.shard}));
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      double s1 = 0, s2 = 0;
      for (std::uint64_t t = 0; t < job.count; ++t) {
        double v = 0;
        for (int k = 0; k < d; ++k) {
          double gap = 0;
          // An exact tie has probability zero; redraw it.
          while (gap == 0) {
            const double x = A.lo[k] + (A.hi[k] - A.lo[k]) * unit(rng);
            const double y = B.lo[k] + (B.hi[k] - B.lo[k]) * unit(rng);
            gap = std::fabs(x - y);
          }
          v += std::log(gap);
        }
        s1 += v;
        s2 += v * v;
      }
      sum[j] = s1;
      sumsq[j] = s2;
    }
  };
  const unsigned t = std::max(1u, threads);
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < t; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  std::vector<double> s1(strata.size(), 0.0), s2(strata.size(), 0.0);
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    s1[jobs[j].stratum] += sum[j];
    s2[jobs[j].stratum] += sumsq[j];
  }
  MonteCarlo mc;
  double var = 0;
  for (std::size_t s = 0; s < strata.size(); ++s) {
    const double n = static_cast<double>(strata[s].count);
    const double mean = s1[s] / n;
    const double sample_var = std::max(0.0, (s2[s] - n * mean * mean) / (n - 1));
    mc.value += strata[s].weight * mean;
    var += strata[s].weight * strata[s].weight * sample_var / n;
    mc.samples += strata[s].count;
  }
  mc.stderr_ = std::sqrt(var);
  return mc;
}

LogInequality log_ineq_check(const Field& field, const std::vector<Box>& U, std::uint64_t samples,
                             std::uint64_t seed, std::uint64_t gamma_n, double tolerance,
                             unsigned threads) {
  if (field.is_rational() || !field.is_totally_real())
    throw InputError("log_ineq_check needs a real quadratic field");
  LogInequality r;
  const MonteCarlo mc = log_potential_integral(U, 2, samples, seed, threads);
  r.lhs = mc.value;
  r.lhs_stderr = mc.stderr_;
  for (const auto& b : U) r.measure += b.measure();
  r.c_dk = gamma_estimate(field, gamma_n).c_dk;
  r.rhs = r.measure * r.measure * (r.c_dk + std::log(r.measure));
  r.tolerance = tolerance;
  r.satisfied = r.lhs >= r.rhs - tolerance;
  return r;
}

}  // namespace uset
