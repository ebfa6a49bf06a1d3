#include <doctest.h>

#include <map>
#include <random>

#include "oracles.hpp"
#include "uset/factorials.hpp"
#include "uset/search.hpp"
#include "uset/universal.hpp"

using namespace uset;

namespace {

const Field QI = Field::quadratic(-1);

std::vector<Field> fields() {
  return {Field::rationals(), QI, Field::quadratic(-2), Field::quadratic(-3), Field::quadratic(-5),
          Field::quadratic(2), Field::quadratic(5)};
}

std::map<long, std::size_t> line_counts(const PointSet& S, bool by_column) {
  std::map<long, std::size_t> c;
  for (const auto& x : S) ++c[by_column ? x.a().get_si() : x.b().get_si()];
  return c;
}

}  // namespace

TEST_SUITE("properties") {
  TEST_CASE("universality is monotone in n and in the set") {
    std::mt19937_64 rng(101);
    for (const auto& F : fields()) {
      for (int t = 0; t < 15; ++t) {
        const auto S = oracle::random_set(F, 3 + rng() % 5, F.is_rational() ? 20 : 5, 5, rng);
        auto T = S;
        while (T.size() < S.size() + 2) {
          const QuadInt x(F, static_cast<long>(rng() % 9), F.is_rational() ? 0l : static_cast<long>(rng() % 9));
          if (!T.contains(x)) T.insert(x);
        }
        for (std::size_t n = 1; n + 1 <= S.size(); ++n) {
          const bool u = is_n_universal(S, n).verdict;
          if (u) {
            CHECK(is_n_universal(S, n - 1).verdict);
            CHECK(is_n_universal(T, n).verdict);
          }
        }
      }
    }
  }

  TEST_CASE("tie-breaking does not change p-ordering invariants") {
    std::mt19937_64 rng(103);
    for (const auto& F : fields())
      for (int t = 0; t < 15; ++t) {
        const auto S = oracle::random_set(F, 2 + rng() % 7, F.is_rational() ? 40 : 6, 6, rng);
        for (unsigned long p : {2ul, 3ul, 5ul})
          for (const auto& P : primes_above(F, p))
            CHECK(p_ordering_of_set(S, P, S.size(), TieBreak::Canonical).w_sequence ==
                  p_ordering_of_set(S, P, S.size(), TieBreak::ReverseCanonical).w_sequence);
      }
  }

  TEST_CASE("the factored volume has the right norm") {
    std::mt19937_64 rng(107);
    for (const auto& F : fields())
      for (int t = 0; t < 20; ++t) {
        const auto S = oracle::random_set(F, 2 + rng() % 5, F.is_rational() ? 40 : 7, 7, rng);
        const auto v = volume(S);
        CHECK(v.ideal.norm() == volume_norm(S));
        CHECK(abs(v.element.norm()) == volume_norm(S));
      }
  }

  TEST_CASE("optimal implies universal and optimal volume is divisible") {
    std::mt19937_64 rng(109);
    for (const Field& F : {QI, Field::quadratic(-2), Field::quadratic(-7)})
      for (int t = 0; t < 40; ++t) {
        const auto S = oracle::random_set(F, 2 + rng() % 4, 3, 3, rng);
        const std::size_t n = S.size() - 1;
        const auto target = optimal_volume(F, n).norm();
        CHECK(volume_norm(S) % target == 0);
        if (is_n_optimal(S)) CHECK(is_n_universal(S, n).verdict);
      }
  }

  TEST_CASE("factorial ideals form a divisibility chain") {
    for (const auto& F : fields())
      for (std::uint64_t n = 1; n < 60; ++n) {
        const auto a = factorial_ideal(F, n), b = factorial_ideal(F, n + 1);
        for (const auto& [P, e] : a) CHECK(b.exponent(P) >= e);
      }
  }

  TEST_CASE("collapsing preserves line counts") {
    std::mt19937_64 rng(113);
    for (const Field& F : {QI, Field::quadratic(-2), Field::quadratic(-6)})
      for (int t = 0; t < 100; ++t) {
        const auto S = oracle::random_set(F, 1 + rng() % 9, 7, 7, rng);
        CHECK(line_counts(collapse_axis(S, CollapseDirection::Vertical), true) == line_counts(S, true));
        CHECK(line_counts(collapse_axis(S, CollapseDirection::Horizontal), false) == line_counts(S, false));
      }
  }
}
