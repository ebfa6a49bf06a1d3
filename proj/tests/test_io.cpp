#include <doctest.h>

#include <string>

#include "uset/errors.hpp"
#include "uset/factorials.hpp"
#include "uset/io.hpp"

using namespace uset;

namespace {

const Field QI = Field::quadratic(-1);

std::string message_of(const Field& F, const std::string& text) {
  try {
    parse_point_set(F, text);
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("integers and elements") {
    const Integer big("123456789012345678901234567890");
    CHECK(integer_from_json(to_json(big)) == big);
    CHECK(integer_from_json(Json(-7)) == -7);
    CHECK(integer_from_json(Json("42")) == 42);
    CHECK_THROWS_AS(integer_from_json(Json("4x2")), InputError);
    CHECK_THROWS_AS(integer_from_json(Json(1.5)), InputError);

    const QuadInt x(QI, Integer("-99999999999999999999"), 3);
    CHECK(quadint_from_json(QI, to_json(x)) == x);
    CHECK(quadint_from_json(QI, Json{{"a", 2}}) == QuadInt(QI, 2));
    CHECK_THROWS_AS(quadint_from_json(Field::rationals(), Json{{"a", 2}, {"b", 1}}), InputError);
  }

  TEST_CASE("primes round trip") {
    for (std::int64_t d : {-1, -5, 2, 5})
      for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 11ul})
        for (const auto& P : primes_above(Field::quadratic(d), p))
          CHECK(prime_from_json(P.field(), to_json(P)) == P);
  }

  TEST_CASE("point sets round trip") {
    const auto S = PointSet::from_coords(QI, {{0, 0}, {1, 0}, {2, 0}, {0, 1}, {1, 1}, {2, 1}});
    const Json j = to_json(S);
    CHECK(j.at("field") == "Q(sqrt -1)");
    CHECK(j.at("elements").size() == 6);
    CHECK(point_set_from_json(QI, j).same_elements(S));
    CHECK(parse_point_set(QI, j.dump()).same_elements(S));
    CHECK(parse_point_set(QI, j.at("elements").dump()).same_elements(S));
    CHECK(parse_point_set(QI, "[]").empty());
  }

  TEST_CASE("parse diagnostics") {
    CHECK(message_of(QI, "[{\"a\": 1},\n {\"a\": 2,, }]").find("line 2") != std::string::npos);
    CHECK(message_of(QI, "[{\"a\": 1}, {\"b\": 2}]").find("element 1") != std::string::npos);
    CHECK(message_of(QI, "[{\"a\": 1}, {\"a\": \"1\", \"b\": 0}]").find("duplicate") != std::string::npos);
    CHECK(message_of(QI, "{\"field\": \"Q(sqrt -5)\", \"elements\": []}").find("declares field") !=
          std::string::npos);
    CHECK(message_of(QI, "{\"points\": []}").find("elements") != std::string::npos);
    CHECK(message_of(QI, "7").find("array") != std::string::npos);
  }

  TEST_CASE("construction traces round trip") {
    ConstructionOptions o;
    o.reduction = Reduction::Hermite;
    o.crt_norm_limit = 30;
    const auto t = build_universal(Field::quadratic(-5), 4, o);
    const Json j = to_json(t);
    const auto back = trace_from_json(j);
    CHECK(back.field == t.field);
    CHECK(back.options.reduction == Reduction::Hermite);
    CHECK(back.options.crt_norm_limit == 30);
    REQUIRE(back.chain.size() == t.chain.size());
    for (std::size_t m = 0; m < t.chain.size(); ++m) CHECK(back.chain[m].same_elements(t.chain[m]));
    CHECK(j.at("steps").size() == t.steps.size());
  }

  TEST_CASE("result objects serialize") {
    CHECK(to_json(factorial_ideal(QI, 5)).at("norm") == "200");
    const auto r = is_n_universal(PointSet::from_coords(Field::rationals(), {{0, 0}, {2, 0}, {4, 0}}), 2);
    const Json j = to_json(r);
    CHECK(j.at("verdict") == false);
    CHECK_FALSE(j.at("failures").empty());
    MonteCarlo m;
    m.value = std::nan("");
    CHECK(to_json(m).at("value").is_null());
  }
}
