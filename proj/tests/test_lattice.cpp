#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "uset/errors.hpp"
#include "uset/lattice.hpp"

using namespace uset;

namespace {

const Field QI = Field::quadratic(-1);

PrimeIdeal split5(int index) {
  for (const auto& P : primes_above(QI, 5))
    if (P.conjugate_index() == index) return P;
  throw std::logic_error("no such prime");
}

// (2+i) contains 2+i, i.e. w = -2 (mod 5).
PrimeIdeal two_plus_i() {
  for (const auto& P : primes_above(QI, 5))
    if (valuation(QuadInt(QI, 2, 1), P) == 1) return P;
  throw std::logic_error("no such prime");
}

}  // namespace

TEST_SUITE("lattice") {
  TEST_CASE("ideal power lattices") {
    const auto P2 = primes_above(QI, 2)[0];
    const auto L = ideal_power_lattice(P2, 2);
    CHECK(L.det() == 4);
    CHECK(L == IdealLattice::from_generators(QI, {QuadInt(QI, 2)}));
    for (const auto& b : L.basis()) CHECK(valuation(b, P2) >= 2);

    CHECK(ideal_power_lattice(two_plus_i(), 1).det() == 5);

    const auto L3 = ideal_power_lattice(primes_above(QI, 3)[0], 1);
    CHECK(L3.det() == 9);
    CHECK(L3.h11() == 3);
    CHECK(L3.h12() == 0);
    CHECK(L3.h22() == 3);
  }

  TEST_CASE("determinant is N(P)^k") {
    for (std::int64_t d : {-1, -2, -3, -5, 2, 5}) {
      const Field F = Field::quadratic(d);
      for (unsigned long p : {2ul, 3ul, 5ul, 7ul})
        for (const auto& P : primes_above(F, p))
          for (int k = 1; k <= 4; ++k) {
            Integer expect = 1;
            for (int i = 0; i < k; ++i) expect *= P.residue_norm();
            CHECK(ideal_power_lattice(P, k).det() == expect);
          }
    }
  }

  TEST_CASE("crt examples") {
    const auto P2 = primes_above(QI, 2)[0];
    const QuadInt x = crt_solve({{QuadInt(QI, 0), P2, 2}, {QuadInt(QI, 1), two_plus_i(), 1}});
    CHECK(valuation(x, P2) >= 2);
    CHECK(valuation(x - QuadInt(QI, 1), two_plus_i()) >= 1);
    // 6 is one valid answer; every answer is congruent to it mod (2)(2+i).
    const auto M = ideal_power_lattice(P2, 2) * ideal_power_lattice(two_plus_i(), 1);
    CHECK(M.contains(x - QuadInt(QI, 6)));

    const Field Q = Field::rationals();
    const auto p3 = primes_above(Q, 3)[0], p5 = primes_above(Q, 5)[0];
    const QuadInt y = crt_solve({{QuadInt(Q, 2), p3, 1}, {QuadInt(Q, 3), p5, 1}});
    CHECK(mod_floor(y.a(), 15) == 8);

    const QuadInt t(QI, 7, -3);
    CHECK(valuation(crt_solve({{t, split5(0), 1}}) - t, split5(0)) >= 1);
  }

  TEST_CASE("crt rejects repeated moduli") {
    const auto P2 = primes_above(QI, 2)[0];
    CHECK_THROWS_AS(crt_solve({{QuadInt(QI, 0), P2, 1}, {QuadInt(QI, 1), P2, 2}}), InputError);
  }

  TEST_CASE("crt satisfies every congruence and ignores order") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> c(-30, 30);
    for (std::int64_t d : {-1, -2, -5, 3}) {
      const Field F = Field::quadratic(d);
      std::vector<PrimeIdeal> primes;
      for (unsigned long p : {2ul, 3ul, 5ul, 7ul})
        for (const auto& P : primes_above(F, p)) primes.push_back(P);
      for (int t = 0; t < 20; ++t) {
        std::vector<Congruence> sys;
        for (const auto& P : primes)
          if (rng() % 2) sys.push_back({QuadInt(F, c(rng), c(rng)), P, 1 + static_cast<int>(rng() % 3)});
        if (sys.empty()) continue;
        for (auto red : {Reduction::Hermite, Reduction::Short}) {
          const QuadInt x = crt_solve(sys, red);
          for (const auto& cg : sys) {
            const QuadInt diff = x - cg.target;
            CHECK((diff.is_zero() || valuation(diff, cg.prime) >= cg.exponent));
          }
          auto rev = sys;
          std::reverse(rev.begin(), rev.end());
          const QuadInt y = crt_solve(rev, red);
          for (const auto& cg : sys) CHECK(ideal_power_lattice(cg.prime, cg.exponent).contains(x - y));
        }
      }
    }
  }

  TEST_CASE("residue systems") {
    const auto P2 = primes_above(QI, 2)[0];
    CHECK(residues(P2, 1).size() == 2);
    const auto r3 = residues(primes_above(QI, 3)[0], 1);
    CHECK(r3.size() == 9);
    for (const auto& x : r3) {
      CHECK(x.a() >= 0);
      CHECK(x.a() < 3);
      CHECK(x.b() >= 0);
      CHECK(x.b() < 3);
    }
    for (std::int64_t d : {-1, -3, -5, 2}) {
      const Field F = Field::quadratic(d);
      for (unsigned long p : {2ul, 3ul, 5ul})
        for (const auto& P : primes_above(F, p))
          for (int k = 1; k <= 3; ++k) {
            const auto r = residues(P, k);
            Integer expect = 1;
            for (int i = 0; i < k; ++i) expect *= P.residue_norm();
            CHECK(Integer(static_cast<unsigned long>(r.size())) == expect);
            if (r.size() > 125) continue;
            for (std::size_t i = 0; i < r.size(); ++i)
              for (std::size_t j = i + 1; j < r.size(); ++j)
                CHECK(oracle::capped_valuation(r[i] - r[j], P, k) < k);
          }
    }
    CHECK_THROWS_AS(residues(P2, 30, 1000), BudgetExceeded);
  }

  TEST_CASE("short and Hermite reductions agree modulo the lattice") {
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<long> c(-1000, 1000);
    const auto L = ideal_power_lattice(two_plus_i(), 3) * ideal_power_lattice(primes_above(QI, 2)[0], 5);
    for (int t = 0; t < 100; ++t) {
      const QuadInt x(QI, c(rng), c(rng));
      CHECK(L.contains(L.reduce(x) - x));
      CHECK(L.contains(L.reduce_short(x) - x));
      CHECK(L.reduce(L.reduce_short(x)) == L.reduce(x));
    }
  }
}
