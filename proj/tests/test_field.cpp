#include <doctest.h>

#include <random>

#include "uset/errors.hpp"
#include "uset/field.hpp"

using namespace uset;

namespace {

const Field QI = Field::quadratic(-1);

QuadInt q(const Field& F, long a, long b = 0) { return QuadInt(F, a, b); }

}  // namespace

TEST_SUITE("field") {
  TEST_CASE("field construction and discriminants") {
    CHECK(Field::quadratic(-1).discriminant() == -4);
    CHECK(Field::quadratic(-3).discriminant() == -3);
    CHECK(Field::quadratic(-3).half_integral_basis());
    CHECK(Field::quadratic(2).discriminant() == 8);
    CHECK(Field::quadratic(5).discriminant() == 5);
    CHECK(Field::rationals().degree() == 1);
    CHECK_THROWS_AS(Field::quadratic(12), InputError);
    CHECK_THROWS_AS(Field::quadratic(1), InputError);
    CHECK_THROWS_AS(Field::quadratic(0), InputError);
  }

  TEST_CASE("field parsing") {
    CHECK(Field::parse("Q") == Field::rationals());
    CHECK(Field::parse("Q(i)") == QI);
    CHECK(Field::parse("Q(sqrt -1)") == QI);
    CHECK(Field::parse("Q(sqrt(-5))") == Field::quadratic(-5));
    CHECK(Field::parse(" Q( sqrt 2 ) ") == Field::quadratic(2));
    CHECK(Field::parse(QI.to_string()) == QI);
    CHECK_THROWS_AS(Field::parse("R"), InputError);
    CHECK_THROWS_AS(Field::parse("Q(sqrt 8)"), InputError);
  }

  TEST_CASE("ring operations") {
    const QuadInt x = q(QI, 1, 1);
    CHECK(x * x == q(QI, 0, 2));
    CHECK(x.norm() == 2);
    CHECK(x.trace() == 2);
    CHECK(x.conj() == q(QI, 1, -1));
    CHECK(-x == q(QI, -1, -1));
    const Field F3 = Field::quadratic(-3);
    const QuadInt w = q(F3, 0, 1);
    CHECK(w * w == w - q(F3, 1));  // w^2 = w - 1
    CHECK(w.norm() == 1);
    CHECK(w.conj() == q(F3, 1, -1));
    CHECK_THROWS_AS(q(QI, 1) + q(F3, 1), InputError);
    CHECK(q(QI, 1, 1).to_string() == "1+w");
    CHECK(q(QI, -2, -3).to_string() == "-2-3w");
  }

  TEST_CASE("splitting of rational primes") {
    auto f2 = factor_rational_prime(QI, 2);
    REQUIRE(f2.size() == 1);
    CHECK(f2[0].first.kind() == Splitting::Ramified);
    CHECK(f2[0].second == 2);
    CHECK(f2[0].first.residue_norm() == 2);

    auto f5 = factor_rational_prime(QI, 5);
    REQUIRE(f5.size() == 2);
    for (const auto& [P, e] : f5) {
      CHECK(P.kind() == Splitting::Split);
      CHECK(e == 1);
      CHECK(P.residue_norm() == 5);
    }
    CHECK(f5[0].first.conjugate() == f5[1].first);

    auto f3 = factor_rational_prime(QI, 3);
    REQUIRE(f3.size() == 1);
    CHECK(f3[0].first.kind() == Splitting::Inert);
    CHECK(f3[0].first.residue_norm() == 9);

    // p = 2 follows the discriminant mod 8.
    CHECK(primes_above(Field::quadratic(-7), 2).size() == 2);  // -7 = 1 mod 8
    CHECK(primes_above(Field::quadratic(-3), 2)[0].kind() == Splitting::Inert);
  }

  TEST_CASE("sum of e f over primes above p is the degree") {
    for (std::int64_t d : {-1, -2, -3, -5, -7, 2, 3, 5, 6, -15}) {
      const Field F = Field::quadratic(d);
      for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul, 17ul, 19ul, 23ul, 29ul}) {
        int total = 0;
        for (const auto& [P, e] : factor_rational_prime(F, p)) total += e * P.inertia_degree();
        CHECK(total == 2);
      }
    }
  }

  TEST_CASE("valuation examples") {
    const auto P2 = primes_above(QI, 2)[0];
    CHECK(valuation(q(QI, 2), P2) == 2);
    CHECK(valuation(q(QI, 1, 1), P2) == 1);
    for (const auto& P : primes_above(QI, 5)) CHECK(valuation(q(QI, 5), P) == 1);
    const Field F5 = Field::quadratic(-5);
    const auto Q2 = primes_above(F5, 2)[0];
    CHECK(Q2.kind() == Splitting::Ramified);
    CHECK(valuation(q(F5, 1, 1), Q2) == 1);
    CHECK(valuation(q(F5, 1, 1) * q(F5, 1, 1), Q2) == 2);
    CHECK_THROWS_AS(valuation(q(QI, 0), P2), InfiniteValuation);
  }

  TEST_CASE("factor_element examples") {
    const auto P2 = primes_above(QI, 2)[0];
    const auto f1 = factor_element(q(QI, 1, 1));
    CHECK(f1.size() == 1);
    CHECK(f1.exponent(P2) == 1);

    const auto f6400 = factor_element(q(QI, 6400));
    CHECK(f6400.exponent(P2) == 16);
    for (const auto& P : primes_above(QI, 5)) CHECK(f6400.exponent(P) == 2);
    CHECK(f6400.norm() == Integer(6400) * 6400);

    const Field F5 = Field::quadratic(-5);
    const auto g = factor_element(q(F5, 1, 1));
    CHECK(g.size() == 2);
    CHECK(g.exponent(primes_above(F5, 2)[0]) == 1);
    const auto above3 = primes_above(F5, 3);
    CHECK(g.exponent(above3[0]) + g.exponent(above3[1]) == 1);
    CHECK(g.norm() == 6);
  }

  TEST_CASE("valuation is additive and split valuations share the norm") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> c(-40, 40);
    for (std::int64_t d : {-1, -2, -3, -5, 2, 5, 7}) {
      const Field F = Field::quadratic(d);
      std::vector<PrimeIdeal> primes;
      for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul})
        for (const auto& P : primes_above(F, p)) primes.push_back(P);
      for (int t = 0; t < 60; ++t) {
        QuadInt x = q(F, c(rng), c(rng)), y = q(F, c(rng), c(rng));
        if (x.is_zero() || y.is_zero()) continue;
        for (const auto& P : primes) {
          CHECK(valuation(x * y, P) == valuation(x, P) + valuation(y, P));
          if (P.kind() == Splitting::Split)
            CHECK(valuation(x, P) + valuation(x, P.conjugate()) == valuation_p(x.norm(), P.p()));
        }
        CHECK(factor_element(x).norm() == abs(x.norm()));
      }
    }
  }

  TEST_CASE("factored ideal bookkeeping") {
    const auto P2 = primes_above(QI, 2)[0];
    FactoredIdeal I;
    I.add(P2, 3);
    CHECK(I.norm() == 8);
    I.add(P2, -3);
    CHECK(I.is_unit());
    CHECK_THROWS_AS(I.add(P2, -1), IntegrityError);
  }
}
