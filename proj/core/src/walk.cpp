#include "uset/walk.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <tuple>

#include "uset/errors.hpp"
#include "uset/lattice.hpp"
#include "uset/rng.hpp"
#include "uset/universal.hpp"

namespace uset {

namespace {

constexpr long kBaseRadiusGuard = 40;
constexpr std::uint64_t kBaseNodeBudget = 50'000'000;

// One (P, j) tier of the a.u.d. requirement.
struct Tier {
  PrimeIdeal prime;
  int power;
  IdealLattice lattice;
  std::uint64_t classes;
};

std::vector<Tier> base_tiers(const Field& field, std::size_t n, std::uint64_t L) {
  std::vector<Tier> tiers;
  for (const auto& P : primes_up_to_norm(field, L)) {
    const int m = stabilization_exponent(P, n);
    for (int j = 1; j <= m; ++j) {
      IdealLattice lat = ideal_power_lattice(P, j);
      const std::uint64_t classes = lat.det().get_ui();
      tiers.push_back({P, j, std::move(lat), classes});
    }
  }
  return tiers;
}

std::vector<QuadInt> box_points(const Field& field, long radius) {
  std::vector<QuadInt> pts;
  const long rb = field.is_rational() ? 0 : radius;
  for (long a = -radius; a <= radius; ++a)
    for (long b = -rb; b <= rb; ++b) pts.emplace_back(field, a, b);
  std::sort(pts.begin(), pts.end(), canonical_less);
  return pts;
}

bool distinct_mod(const std::vector<QuadInt>& pts, std::size_t need, const Integer& lambda) {
  std::set<std::pair<Integer, Integer>> seen;
  for (const auto& x : pts) seen.insert({mod_floor(x.a(), lambda), mod_floor(x.b(), lambda)});
  return seen.size() >= need;
}

unsigned resolve_threads(unsigned t) {
  if (t == 0) t = std::max(1u, std::thread::hardware_concurrency());
  return t;
}

}  // namespace

int stabilization_exponent(const PrimeIdeal& P, std::size_t n) {
  int m = 0;
  Integer pw = 1;
  const Integer target(static_cast<unsigned long>(n + 1));
  while (pw < target) {
    pw *= P.residue_norm();
    ++m;
  }
  return m;
}

Integer scaling_modulus(const Field& field, std::size_t n, std::uint64_t L, ScalingMode mode) {
  if (mode == ScalingMode::Factorial) {
    if (L > 12) throw InputError("factorial scaling is limited to L <= 12 (got " +
                                 std::to_string(L) + ")");
    Integer f = 1;
    for (std::uint64_t k = 2; k <= L; ++k) f *= static_cast<unsigned long>(k);
    return f;
  }
  // p^k lies in P^{e k}, so P^m | p^k once e k >= m.
  std::map<Integer, int> need;
  for (const auto& P : primes_up_to_norm(field, L)) {
    const int m = stabilization_exponent(P, n);
    const int e = P.ramification();
    int& k = need[P.p()];
    k = std::max(k, (m + e - 1) / e);
  }
  Integer lambda = 1;
  for (const auto& [p, k] : need) {
    Integer pk;
    mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(k));
    lambda *= pk;
  }
  return lambda;
}

std::vector<QuadInt> find_base_points(const Field& field, std::size_t n, std::uint64_t L) {
  if (L <= 2 * (n + 1))
    throw InputError("L must exceed 2(n+1) (L = " + std::to_string(L) +
                     ", n = " + std::to_string(n) + ")");
  const std::vector<Tier> tiers = base_tiers(field, n, L);
  const std::size_t need = n + 1;
  const std::size_t total = need + static_cast<std::size_t>(field.degree()) - 1;

  for (long radius = 1; radius <= kBaseRadiusGuard; ++radius) {
    const std::vector<QuadInt> pts = box_points(field, radius);
    if (pts.size() < total) continue;

    // Class index of every candidate in every tier.
    std::vector<std::vector<std::uint32_t>> cls(tiers.size());
    std::vector<std::vector<std::uint32_t>> counts(tiers.size());
    for (std::size_t t = 0; t < tiers.size(); ++t) {
      std::map<std::pair<Integer, Integer>, std::uint32_t> ids;
      for (const auto& x : pts) {
        const QuadInt r = tiers[t].lattice.reduce(x);
        auto [it, fresh] = ids.try_emplace({r.a(), r.b()}, static_cast<std::uint32_t>(ids.size()));
        cls[t].push_back(it->second);
      }
      counts[t].assign(ids.size(), 0);
    }
    // A class may hold at most ceil(need / Q) points, and only need mod Q
    // classes may reach that cap when Q does not divide need.
    std::vector<std::uint32_t> cap(tiers.size()), cap_slots(tiers.size()), at_cap(tiers.size(), 0);
    for (std::size_t t = 0; t < tiers.size(); ++t) {
      const std::uint64_t Q = tiers[t].classes;
      const std::uint64_t r = need % Q;
      cap[t] = static_cast<std::uint32_t>(need / Q + (r ? 1 : 0));
      cap_slots[t] = static_cast<std::uint32_t>(r ? r : Q);
    }

    std::vector<std::size_t> chosen;
    std::uint64_t nodes = 0;
    std::function<bool(std::size_t)> dfs = [&](std::size_t from) -> bool {
      if (chosen.size() == need) return true;
      for (std::size_t i = from; i + (need - chosen.size()) <= pts.size(); ++i) {
        if (++nodes > kBaseNodeBudget) throw BudgetExceeded("base point search exceeded its node budget");
        bool ok = true;
        for (std::size_t t = 0; t < tiers.size() && ok; ++t) {
          const std::uint32_t c = counts[t][cls[t][i]];
          if (c + 1 > cap[t] || (c + 1 == cap[t] && at_cap[t] + 1 > cap_slots[t])) ok = false;
        }
        if (!ok) continue;
        for (std::size_t t = 0; t < tiers.size(); ++t)
          if (++counts[t][cls[t][i]] == cap[t]) ++at_cap[t];
        chosen.push_back(i);
        if (dfs(i + 1)) return true;
        chosen.pop_back();
        for (std::size_t t = 0; t < tiers.size(); ++t)
          if (counts[t][cls[t][i]]-- == cap[t]) --at_cap[t];
      }
      return false;
    };
    if (!dfs(0)) continue;

    std::vector<QuadInt> out;
    for (auto i : chosen) out.push_back(pts[i]);
    const PointSet head(field, out);
    for (const auto& t : tiers)
      ensure(is_aud(head, t.prime, t.power),
             "base point search produced a set that is not a.u.d. mod " + t.prime.to_string());
    for (std::size_t i = 0; i < pts.size() && out.size() < total; ++i)
      if (std::find(out.begin(), out.end(), pts[i]) == out.end()) out.push_back(pts[i]);
    return out;
  }
  throw BudgetExceeded("no base points within radius " + std::to_string(kBaseRadiusGuard));
}

WalkConfig validated(WalkConfig c) {
  if (c.L <= 2 * (c.n + 1))
    throw InputError("L must exceed 2(n+1) (L = " + std::to_string(c.L) +
                     ", n = " + std::to_string(c.n) + ")");
  if (c.trials == 0) throw InputError("trials must be positive");
  const Integer lambda = scaling_modulus(c.field, c.n, c.L, c.mode);
  if (c.base_points.empty()) {
    c.base_points = find_base_points(c.field, c.n, c.L);
    return c;
  }
  const std::size_t total = c.n + static_cast<std::size_t>(c.field.degree());
  if (c.base_points.size() != total)
    throw InputError("expected " + std::to_string(total) + " base points, got " +
                     std::to_string(c.base_points.size()));
  for (const auto& x : c.base_points)
    if (!(x.field() == c.field)) throw InputError("base point from a different field");
  const PointSet head(c.field, std::vector<QuadInt>(c.base_points.begin(),
                                                    c.base_points.begin() + c.n + 1));
  for (const auto& t : base_tiers(c.field, c.n, c.L))
    if (!is_aud(head, t.prime, t.power))
      throw InputError("first n+1 base points are not almost uniformly distributed mod " +
                       t.prime.to_string() + "^" + std::to_string(t.power));
  if (!distinct_mod(c.base_points, c.n + 1, lambda))
    throw InputError("fewer than n+1 base points are distinct modulo " + lambda.get_str());
  return c;
}

std::vector<long> walk_endpoint(int d, std::uint64_t M, std::mt19937_64& rng) {
  std::vector<long> out(static_cast<std::size_t>(d));
  for (auto& coord : out) {
    std::uint64_t ones = 0;
    std::uint64_t left = M;
    for (; left >= 64; left -= 64) ones += static_cast<std::uint64_t>(std::popcount(rng()));
    if (left) ones += static_cast<std::uint64_t>(std::popcount(rng() & ((1ull << left) - 1)));
    coord = 2 * static_cast<long>(ones) - static_cast<long>(M);
  }
  return out;
}

std::pair<double, double> wilson_interval(std::uint64_t k, std::uint64_t n, double z) {
  if (n == 0) throw InputError("wilson_interval needs n > 0");
  const double N = static_cast<double>(n);
  const double p = static_cast<double>(k) / N;
  const double denom = 1 + z * z / N;
  const double centre = (p + z * z / (2 * N)) / denom;
  const double half = z * std::sqrt(p * (1 - p) / N + z * z / (4 * N * N)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

SimulationResult simulate(const WalkConfig& config) {
  SimulationResult res;
  res.config = validated(config);
  const WalkConfig& c = res.config;
  res.modulus = scaling_modulus(c.field, c.n, c.L, c.mode);
  const int d = c.field.degree();

  std::vector<std::optional<PrimeIdeal>> witness(c.trials);
  std::vector<char> failed(c.trials, 0);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::uint64_t t = next.fetch_add(1);
      if (t >= c.trials) return;
      std::mt19937_64 rng(derive_seed(c.seed, {t}));
      PointSet S(c.field);
      for (const auto& a : c.base_points) {
        const auto psi = walk_endpoint(d, c.M, rng);
        const QuadInt xi = a + QuadInt(c.field, res.modulus * psi[0],
                                       d == 2 ? res.modulus * psi[1] : Integer(0));
        if (!S.contains(xi)) S.insert(xi);
      }
      const auto report = is_n_universal(S, c.n);
      if (report.verdict) continue;
      failed[t] = 1;
      ensure(!report.too_small && !report.failures.empty(),
             "walk set lost its n+1 residues modulo the scaling constant");
      PrimeIdeal best = report.failures.front().prime;
      for (const auto& f : report.failures) best = std::min(best, f.prime);
      ensure(best.residue_norm() > static_cast<unsigned long>(c.L),
             "walk set fails at " + best.to_string() + ", whose norm does not exceed L");
      witness[t] = best;
    }
  };
  const unsigned threads = resolve_threads(c.threads);
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  for (std::uint64_t t = 0; t < c.trials; ++t) {
    if (!failed[t]) continue;
    ++res.failures;
    ++res.failures_by_prime[*witness[t]];
  }
  const double T = static_cast<double>(c.trials);
  res.p_hat = static_cast<double>(res.failures) / T;
  res.stderr_ = std::sqrt(res.p_hat * (1 - res.p_hat) / T);
  std::tie(res.ci_low, res.ci_high) = wilson_interval(res.failures, c.trials);
  return res;
}

double tail_fraction(int d, std::uint64_t M, std::uint64_t samples, std::uint64_t seed,
                     double scale) {
  if (d < 1 || d > 2) throw InputError("tail_fraction supports d = 1 or 2");
  if (samples == 0) throw InputError("tail_fraction needs samples > 0");
  const double m = static_cast<double>(M);
  const double threshold =
      M == 0 ? 0.0 : scale * std::sqrt(m) * std::pow(std::log(m), 1.0 / (2.0 * d));
  std::mt19937_64 rng(derive_seed(seed, {M}));
  std::uint64_t hits = 0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    const auto x = walk_endpoint(d, M, rng);
    long sup = 0;
    for (long v : x) sup = std::max(sup, std::labs(v));
    if (static_cast<double>(sup) > threshold) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(samples);
}

long double fourier_bound(std::uint64_t p, std::uint64_t M) {
  if (p < 2) throw InputError("fourier_bound needs p >= 2");
  const long double pi = std::numbers::pi_v<long double>;
  long double s = 0;
  for (std::uint64_t a = 0; a < p; ++a)
    s += std::pow(std::fabs(std::cos(2 * pi * static_cast<long double>(a) / p)),
                  static_cast<long double>(M));
  return s / static_cast<long double>(p);
}

std::vector<long double> walk_distribution_mod(std::uint64_t p, std::uint64_t M) {
  if (p < 2) throw InputError("walk distribution needs p >= 2");
  if (p > 100'000 || p * std::max<std::uint64_t>(M, 1) > 50'000'000)
    throw BudgetExceeded("walk distribution mod " + std::to_string(p) + " after " +
                         std::to_string(M) + " steps is too large for dense convolution");
  std::vector<long double> mu(p, 0), next(p);
  mu[0] = 1;
  for (std::uint64_t s = 0; s < M; ++s) {
    for (std::uint64_t x = 0; x < p; ++x)
      next[x] = 0.5L * (mu[(x + p - 1) % p] + mu[(x + 1) % p]);
    mu.swap(next);
  }
  return mu;
}

long double convolution_oracle(std::uint64_t p, std::uint64_t M) {
  const auto mu = walk_distribution_mod(p, M);
  const long double pi = std::numbers::pi_v<long double>;
  long double total = 0;
  for (std::uint64_t a = 0; a < p; ++a) {
    long double re = 0, im = 0;
    for (std::uint64_t g = 0; g < p; ++g) {
      const long double angle = 2 * pi * static_cast<long double>((a * g) % p) / p;
      re += mu[g] * std::cos(angle);
      im -= mu[g] * std::sin(angle);
    }
    total += std::sqrt(re * re + im * im);
  }
  return total / static_cast<long double>(p);
}

HausdorffYoung hausdorff_young(std::uint64_t p, std::uint64_t M, double q) {
  if (!(q >= 2)) throw InputError("Hausdorff-Young check needs q >= 2");
  const auto mu = walk_distribution_mod(p, M);
  const long double pi = std::numbers::pi_v<long double>;
  const long double Q = q, Qp = Q / (Q - 1);
  HausdorffYoung h;
  for (auto v : mu) h.lhs += std::pow(v, Q);
  long double s = 0;
  for (std::uint64_t a = 0; a < p; ++a)
    s += std::pow(std::fabs(std::pow(std::cos(2 * pi * static_cast<long double>(a) / p),
                                     static_cast<long double>(M))),
                  Qp);
  h.rhs = std::pow(s / static_cast<long double>(p), Q - 1);
  return h;
}

long double prime_fourier_ratio(const PrimeIdeal& P, std::uint64_t M) {
  const std::uint64_t p = P.p().get_ui();
  if (P.kind() == Splitting::Inert) {
    const long double f = fourier_bound(p, M);
    return f * f;
  }
  if (!P.has_local_root()) return fourier_bound(p, M);
  // O_K/P = F_p with w -> r; the character x -> e(a x / p) sees both steps.
  const std::uint64_t r = mod_floor(P.local_root(), P.p()).get_ui();
  const long double pi = std::numbers::pi_v<long double>;
  const long double m = static_cast<long double>(M);
  long double s = 0;
  for (std::uint64_t a = 0; a < p; ++a) {
    const long double c1 = std::cos(2 * pi * static_cast<long double>(a) / p);
    const long double c2 = std::cos(2 * pi * static_cast<long double>((a * r) % p) / p);
    s += std::pow(std::fabs(c1 * c2), m);
  }
  return s / static_cast<long double>(p);
}

long double prime_sum_shape(const Field& field, std::uint64_t L, std::uint64_t M, int m,
                            std::uint64_t norm_cap) {
  long double s = 0;
  for (const auto& P : primes_up_to_norm(field, norm_cap))
    if (P.residue_norm() > static_cast<unsigned long>(L))
      s += std::pow(prime_fourier_ratio(P, M), static_cast<long double>(m));
  return s;
}

double est1_shape(double N, double M, int m) {
  return std::pow(1.0 / N + 1.0 / std::sqrt(M), m);
}

std::vector<std::vector<std::vector<int>>> m_partitions(int n, int m) {
  if (n < 1 || m < 0) throw InputError("m-partitions need n >= 1 and m >= 0");
  const int size = n + m;
  std::vector<std::vector<std::vector<int>>> out;
  std::vector<std::vector<int>> blocks;
  std::function<void(int)> rec = [&](int e) {
    if (e == size) {
      if (static_cast<int>(blocks.size()) == n) out.push_back(blocks);
      return;
    }
    // Not enough elements left to open the missing blocks.
    if (n - static_cast<int>(blocks.size()) > size - e) return;
    // Indices, not references: deeper calls may grow `blocks`.
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      blocks[b].push_back(e);
      rec(e + 1);
      blocks[b].pop_back();
    }
    if (static_cast<int>(blocks.size()) < n) {
      blocks.push_back({e});
      rec(e + 1);
      blocks.pop_back();
    }
  };
  rec(0);
  return out;
}

CollisionCheck collision_check(int n, int m, const std::vector<std::vector<long double>>& mus) {
  const int k = n + m;
  if (k > 6) throw InputError("collision_check supports n+m <= 6");
  if (static_cast<int>(mus.size()) != k) throw InputError("need one distribution per variable");
  const std::size_t q = mus.front().size();
  for (const auto& mu : mus)
    if (mu.size() != q || q == 0) throw InputError("distributions must share a non-empty support");
  double states = std::pow(static_cast<double>(q), k);
  if (states > 1e7) throw BudgetExceeded("collision_check state space exceeds 10^7");

  CollisionCheck c;
  const auto parts = m_partitions(n, m);
  c.partitions = parts.size();
  for (const auto& A : parts) {
    long double exact_term = 1, amgm_term = 1;
    for (const auto& block : A) {
      long double s = 0, a = 0;
      const long double sz = static_cast<long double>(block.size());
      for (std::size_t x = 0; x < q; ++x) {
        long double prod = 1, pw = 0;
        for (int j : block) {
          prod *= mus[static_cast<std::size_t>(j)][x];
          pw += std::pow(mus[static_cast<std::size_t>(j)][x], sz);
        }
        s += prod;
        a += pw / sz;
      }
      exact_term *= s;
      amgm_term *= a;
    }
    c.union_bound += exact_term;
    c.amgm_bound += amgm_term;
  }

  std::vector<std::size_t> x(static_cast<std::size_t>(k), 0);
  for (;;) {
    long double prob = 1;
    for (int j = 0; j < k; ++j) prob *= mus[static_cast<std::size_t>(j)][x[static_cast<std::size_t>(j)]];
    std::vector<std::size_t> vals(x);
    std::sort(vals.begin(), vals.end());
    const auto distinct = std::unique(vals.begin(), vals.end()) - vals.begin();
    if (distinct <= n) c.exact += prob;
    int j = 0;
    while (j < k && ++x[static_cast<std::size_t>(j)] == q) x[static_cast<std::size_t>(j++)] = 0;
    if (j == k) break;
  }
  return c;
}

}  // namespace uset
