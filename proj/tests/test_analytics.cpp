#include <doctest.h>

#include <cmath>

#include "uset/analytics.hpp"
#include "uset/errors.hpp"

using namespace uset;

namespace {

const Field QQ = Field::rationals();
const Field QI = Field::quadratic(-1);

Box box1(double lo, double hi) { return {{lo}, {hi}}; }
Box box2(double x0, double x1, double y0, double y1) { return {{x0, y0}, {x1, y1}}; }

}  // namespace

TEST_SUITE("analytics") {
  TEST_CASE("Euler-Mascheroni helpers") {
    CHECK(gamma_mascheroni() == doctest::Approx(0.5772156649015329).epsilon(1e-15));
    CHECK(std::abs(harmonic_gap(1000) - gamma_mascheroni()) < 1e-3);
    CHECK(std::abs(accelerated_gamma(1000) - gamma_mascheroni()) < 1e-12);
    CHECK(log_norm_factorial(QQ, 10) == doctest::Approx(std::log(3628800.0)));
    CHECK(log_norm_factorial(QI, 5) == doctest::Approx(std::log(200.0)));
  }

  TEST_CASE("rational estimate converges to gamma") {
    double prev = 1.0;
    for (std::uint64_t n : {1000ull, 10000ull, 100000ull}) {
      const double err = std::abs(gamma_estimate_value(QQ, n) - gamma_mascheroni());
      CHECK(err < prev);
      prev = err;
    }
    CHECK(prev < 1e-3);
    CHECK_THROWS_AS(gamma_estimate(QQ, 1), InputError);
  }

  TEST_CASE("quadratic estimates approach known Euler-Kronecker constants") {
    CHECK(std::abs(gamma_estimate_value(QI, 100000) - 0.8224) < 5e-3);
    CHECK(std::abs(gamma_estimate_value(Field::quadratic(-3), 100000) - 0.9454) < 5e-3);
    const auto g = gamma_estimate(QI, 40000);
    REQUIRE(g.convergence.size() == 3);
    CHECK(g.convergence.back().first == 40000);
    CHECK(g.convergence.back().second == doctest::Approx(g.estimate));
    CHECK(g.gamma_q == doctest::Approx(gamma_mascheroni()));
    CHECK(g.c_dk == doctest::Approx(-1.5 - g.estimate + g.gamma_q - 0.5 * std::log(4.0)));
  }

  TEST_CASE("Ihara-type bound") {
    const auto q = ihara_bound_check(QQ, 100000);
    CHECK(q.bound == doctest::Approx(gamma_mascheroni()));
    CHECK(q.satisfied);
    CHECK(q.hypothesis_holds);
    const auto r = ihara_bound_check(Field::quadratic(5), 100000);
    CHECK(r.satisfied);
    CHECK(r.hypothesis_holds);
    CHECK_FALSE(ihara_bound_check(QI, 20000).hypothesis_holds);
  }

  TEST_CASE("volume asymptotics") {
    CHECK(vol_asymptotic_check(QI, 1, 20000).exact == doctest::Approx(0.0));
    CHECK(vol_asymptotic_check(QI, 5, 20000).exact == doctest::Approx(2 * std::log(6400.0)));
    double prev = 1e9;
    for (std::uint64_t n : {100ull, 400ull, 1600ull}) {
      const double rel = std::abs(vol_asymptotic_check(QI, n, 20000).relative_gap);
      CHECK(rel < prev);
      prev = rel;
    }
  }

  TEST_CASE("Monte Carlo log-potentials") {
    // Over [0,1]: -3/2. Over the unit square with ||z|| = |z_1||z_2|: -3.
    const auto one = log_potential_integral({box1(0, 1)}, 1, 400000, 7);
    CHECK(std::abs(one.value + 1.5) < 4 * one.stderr_);
    const auto two = log_potential_integral({box2(0, 1, 0, 1)}, 2, 400000, 7);
    CHECK(std::abs(two.value + 3.0) < 4 * two.stderr_);
    // A union of two disjoint intervals equals [0, 2] split in half.
    const auto split = log_potential_integral({box1(0, 1), box1(1, 2)}, 1, 400000, 8);
    const double whole = 4 * (std::log(2.0) - 1.5);
    CHECK(std::abs(split.value - whole) < 4 * split.stderr_);
  }

  TEST_CASE("scaling law of the log-potential") {
    const std::vector<Box> U = {box2(0, 1, 0, 0.5), box2(1.5, 2, 0, 1)};
    const auto base = log_potential_integral(U, 2, 400000, 3);
    double m = 0;
    for (const auto& b : U) m += b.measure();
    for (double lambda : {0.5, 2.0}) {
      const auto s = log_potential_integral(scale_boxes(U, lambda), 2, 400000, 4);
      const double l4 = std::pow(lambda, 4);
      const double expect = l4 * (base.value + m * m * 2 * std::log(lambda));
      const double sigma = std::hypot(s.stderr_, l4 * base.stderr_);
      CHECK(std::abs(s.value - expect) < 4 * sigma);
    }
  }

  TEST_CASE("threads do not change Monte Carlo results") {
    const std::vector<Box> U = {box2(0, 1, 0, 1)};
    const auto a = log_potential_integral(U, 2, 300000, 11, 1);
    const auto b = log_potential_integral(U, 2, 300000, 11, 3);
    CHECK(a.value == b.value);
    CHECK(a.stderr_ == b.stderr_);
  }

  TEST_CASE("input validation") {
    CHECK_THROWS_AS(log_potential_integral({box1(0, 1)}, 3, 100, 1), InputError);
    CHECK_THROWS_AS(log_potential_integral({box1(0, 1), box1(0.5, 2)}, 1, 100, 1), InputError);
    CHECK_THROWS_AS(log_potential_integral({box2(0, 1, 0, 1)}, 1, 100, 1), InputError);
    CHECK_THROWS_AS(log_potential_integral({}, 1, 100, 1), InputError);
  }

  TEST_CASE("log inequality on a tiny set") {
    const auto r = log_ineq_check(Field::quadratic(2), {box2(0, 0.1, 0, 0.1)}, 200000, 5, 20000);
    CHECK(r.satisfied);
    CHECK(r.measure == doctest::Approx(0.01));
  }
}
