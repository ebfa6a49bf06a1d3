#include <doctest.h>

#include "uset/construct.hpp"
#include "uset/errors.hpp"
#include "uset/universal.hpp"

using namespace uset;

namespace {

void check_chain(const ConstructionTrace& t, std::size_t n) {
  REQUIRE(t.chain.size() == n + 1);
  REQUIRE(t.steps.size() == n);
  for (std::size_t m = 0; m <= n; ++m) {
    const auto& E = t.chain[m];
    CHECK(E.size() == m + 2);
    CHECK(is_n_universal(E, m).verdict);
    if (m > 0) {
      CHECK(E.prefix(m + 1).same_elements(t.chain[m - 1]));
      CHECK(t.steps[m - 1].chosen == E[m + 1]);
      CHECK(t.steps[m - 1].n == m - 1);
    }
  }
}

}  // namespace

TEST_SUITE("construct") {
  TEST_CASE("E_0 is {0, 1}") {
    const auto t = build_universal(Field::quadratic(-3), 0);
    REQUIRE(t.chain.size() == 1);
    CHECK(t.chain[0].same_elements(PointSet::from_coords(Field::quadratic(-3), {{0, 0}, {1, 0}})));
    CHECK(t.steps.empty());
  }

  TEST_CASE("single extension step") {
    const Field F = Field::quadratic(-1);
    const auto E0 = PointSet::from_coords(F, {{0, 0}, {1, 0}});
    const auto [x, step] = extend_universal(E0, 0);
    CHECK_FALSE(E0.contains(x));
    CHECK(is_n_universal(E0.with(x), 1).verdict);
    CHECK(step.chosen == x);
    // E must be n-universal with n+2 points.
    CHECK_THROWS_AS(extend_universal(PointSet::from_coords(F, {{0, 0}, {1, 0}, {2, 0}}), 0), InputError);
    CHECK_THROWS_AS(extend_universal(PointSet::from_coords(F, {{0, 0}, {2, 0}, {4, 0}}), 1), InputError);
  }

  TEST_CASE("chains in several fields") {
    check_chain(build_universal(Field::quadratic(-1), 5), 5);
    check_chain(build_universal(Field::rationals(), 20), 20);
    check_chain(build_universal(Field::quadratic(-5), 8), 8);
    check_chain(build_universal(Field::quadratic(2), 8), 8);
  }

  TEST_CASE("reductions and the explicit exponent rule") {
    ConstructionOptions hermite;
    hermite.reduction = Reduction::Hermite;
    check_chain(build_universal(Field::quadratic(-2), 6, hermite), 6);

    ConstructionOptions nu;
    nu.exponent_rule = ExponentRule::FullValuation;
    check_chain(build_universal(Field::quadratic(-1), 4, nu), 4);
  }

  TEST_CASE("construction is deterministic") {
    const auto a = build_universal(Field::quadratic(-7), 6);
    const auto b = build_universal(Field::quadratic(-7), 6);
    for (std::size_t m = 0; m < a.chain.size(); ++m) CHECK(a.chain[m].same_elements(b.chain[m]));
  }
}
