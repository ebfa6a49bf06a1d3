#include "uset/io.hpp"

#include <cmath>
#include <string>

#include "uset/errors.hpp"

namespace uset {

namespace {

const char* rule_name(ExponentRule r) {
  return r == ExponentRule::Stabilized ? "stabilized" : "full-valuation";
}

const char* reduction_name(Reduction r) { return r == Reduction::Hermite ? "hermite" : "short"; }

// Non-finite doubles have no JSON spelling.
Json real(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

std::string line_col(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

Json to_json(const Integer& x) { return x.get_str(); }

Json to_json(const QuadInt& x) {
  return Json{{"a", x.a().get_str()}, {"b", x.b().get_str()}};
}

Json to_json(const PrimeIdeal& P) {
  Json j{{"name", P.to_string()},
         {"p", P.p().get_str()},
         {"kind", std::string(to_string(P.kind()))},
         {"norm", P.residue_norm().get_str()}};
  if (P.kind() == Splitting::Split) j["index"] = P.conjugate_index();
  return j;
}

Json to_json(const FactoredIdeal& I) {
  Json factors = Json::array();
  for (const auto& [P, e] : I) {
    Json f = to_json(P);
    f["exponent"] = e;
    factors.push_back(std::move(f));
  }
  return Json{{"ideal", I.to_string()}, {"norm", I.norm().get_str()}, {"factors", factors}};
}

Json to_json(const PointSet& S) {
  Json el = Json::array();
  for (const auto& x : S) el.push_back(to_json(x));
  return Json{{"field", S.field().to_string()}, {"elements", el}};
}

Json to_json(const UniversalityReport& r) {
  Json j{{"verdict", r.verdict}, {"n", r.n}, {"set_size", r.set_size}, {"too_small", r.too_small}};
  j["relevant_primes"] = Json::array();
  for (const auto& P : r.relevant_primes) j["relevant_primes"].push_back(P.to_string());
  j["failures"] = Json::array();
  for (const auto& f : r.failures) {
    Json fj = to_json(f.prime);
    fj["k"] = f.k;
    j["failures"].push_back(std::move(fj));
  }
  j["unresolved_cofactors"] = Json::array();
  for (const auto& q : r.unresolved_cofactors) j["unresolved_cofactors"].push_back(q.get_str());
  j["resolved_volume"] = to_json(r.resolved_volume);
  j["note"] = r.reduction_note;
  return j;
}

Json to_json(const ConstructionStep& s) {
  Json j{{"n", s.n}};
  auto names = [](const std::vector<PrimeIdeal>& v) {
    Json a = Json::array();
    for (const auto& P : v) a.push_back(P.to_string());
    return a;
  };
  j["bad_primes"] = names(s.bad_primes);
  j["refined_primes"] = names(s.refined_primes);
  j["congruences"] = Json::array();
  for (const auto& c : s.congruences)
    j["congruences"].push_back(
        Json{{"prime", c.prime.to_string()}, {"exponent", c.exponent}, {"target", to_json(c.target)}});
  j["screened_primes"] = names(s.screened_primes);
  j["modulus_norm"] = s.modulus_norm.get_str();
  j["crt_solution"] = to_json(s.crt_solution);
  j["chosen"] = to_json(s.chosen);
  j["candidate_index"] = s.candidate_index;
  j["candidates_over_budget"] = s.candidates_over_budget;
  j["magnitude"] = s.magnitude.get_str();
  j["log_excess"] = real(s.log_excess);
  return j;
}

Json to_json(const ConstructionTrace& t) {
  Json j{{"field", t.field.to_string()}};
  j["options"] = Json{{"exponent_rule", rule_name(t.options.exponent_rule)},
                      {"crt_norm_limit", t.options.crt_norm_limit},
                      {"reduction", reduction_name(t.options.reduction)},
                      {"residue_guard", t.options.residue_guard},
                      {"factor_bound", t.options.factor_bound},
                      {"max_candidates", t.options.max_candidates}};
  j["chain"] = Json::array();
  for (const auto& E : t.chain) j["chain"].push_back(to_json(E));
  j["steps"] = Json::array();
  for (const auto& s : t.steps) j["steps"].push_back(to_json(s));
  return j;
}

Json to_json(const SearchResult& r) {
  Json j{{"n", r.n},
         {"box", Json{{"width", r.box.width}, {"height", r.box.height},
                      {"justification", r.box.justification}}},
         {"found", r.sets.size()},
         {"nodes", r.nodes},
         {"scope", r.scope}};
  j["sets"] = Json::array();
  for (const auto& S : r.sets) j["sets"].push_back(to_json(S));
  return j;
}

Json to_json(const GammaEstimate& g) {
  Json j{{"field", g.field.to_string()}, {"n", g.n},         {"estimate", real(g.estimate)},
         {"gamma_Q", real(g.gamma_q)},     {"c_dK", real(g.c_dk)}};
  j["convergence"] = Json::array();
  for (const auto& [m, v] : g.convergence) j["convergence"].push_back(Json{{"n", m}, {"estimate", real(v)}});
  return j;
}

Json to_json(const BoundCheck& b) {
  return Json{{"bound", real(b.bound)},           {"estimate", real(b.estimate)},
              {"tolerance", real(b.tolerance)},   {"satisfied", b.satisfied},
              {"hypothesis_holds", b.hypothesis_holds}};
}

Json to_json(const MonteCarlo& m) {
  return Json{{"value", real(m.value)}, {"stderr", real(m.stderr_)}, {"samples", m.samples}};
}

Json to_json(const LogInequality& l) {
  return Json{{"lhs", real(l.lhs)},       {"lhs_stderr", real(l.lhs_stderr)},
              {"measure", real(l.measure)}, {"c_dK", real(l.c_dk)},
              {"rhs", real(l.rhs)},       {"tolerance", real(l.tolerance)},
              {"satisfied", l.satisfied}};
}

Json to_json(const SimulationResult& s) {
  Json j{{"modulus", s.modulus.get_str()},
         {"trials", s.config.trials},
         {"failures", s.failures},
         {"p_hat", real(s.p_hat)},
         {"stderr", real(s.stderr_)},
         {"ci_low", real(s.ci_low)},
         {"ci_high", real(s.ci_high)}};
  j["base_points"] = Json::array();
  for (const auto& a : s.config.base_points) j["base_points"].push_back(to_json(a));
  j["failures_by_prime"] = Json::array();
  for (const auto& [P, k] : s.failures_by_prime) {
    Json f = to_json(P);
    f["count"] = k;
    j["failures_by_prime"].push_back(std::move(f));
  }
  return j;
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Integer(j.get<std::uint64_t>());
    return Integer(static_cast<long>(j.get<std::int64_t>()));
  }
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    Integer x;
    if (s.empty() || x.set_str(s, 10) != 0) throw InputError("not a decimal integer: \"" + s + "\"");
    return x;
  }
  throw InputError("expected an integer or a decimal string, got " + j.dump());
}

QuadInt quadint_from_json(const Field& field, const Json& j) {
  if (!j.is_object()) throw InputError("expected an object {\"a\": ..., \"b\": ...}, got " + j.dump());
  if (!j.contains("a")) throw InputError("missing coordinate \"a\"");
  const Integer a = integer_from_json(j.at("a"));
  const Integer b = j.contains("b") ? integer_from_json(j.at("b")) : Integer(0);
  if (field.is_rational() && b != 0) throw InputError("nonzero \"b\" in a rational set");
  return QuadInt(field, a, b);
}

PrimeIdeal prime_from_json(const Field& field, const Json& j) {
  const Integer p = integer_from_json(j.at("p"));
  const std::string kind = j.at("kind").get<std::string>();
  const int index = j.contains("index") ? j.at("index").get<int>() : 0;
  for (const auto& P : primes_above(field, p))
    if (to_string(P.kind()) == kind && (P.kind() != Splitting::Split || P.conjugate_index() == index))
      return P;
  throw InputError("no " + kind + " prime above " + p.get_str() + " in " + field.to_string());
}

PointSet point_set_from_json(const Field& field, const Json& j) {
  const Json* arr = &j;
  if (j.is_object()) {
    if (j.contains("field")) {
      const Field declared = Field::parse(j.at("field").get<std::string>());
      if (!(declared == field))
        throw InputError("set declares field " + declared.to_string() + " but " +
                         field.to_string() + " was requested");
    }
    if (!j.contains("elements")) throw InputError("set object has no \"elements\" array");
    arr = &j.at("elements");
  }
  if (!arr->is_array()) throw InputError("a set must be a JSON array of {\"a\", \"b\"} objects");
  PointSet S(field);
  for (std::size_t i = 0; i < arr->size(); ++i) {
    QuadInt x(field);
    try {
      x = quadint_from_json(field, (*arr)[i]);
    } catch (const InputError& e) {
      throw InputError("element " + std::to_string(i) + ": " + e.what());
    }
    if (S.contains(x))
      throw InputError("element " + std::to_string(i) + ": duplicate of " + x.to_string());
    S.insert(x);
  }
  return S;
}

PointSet parse_point_set(const Field& field, std::string_view text) {
  Json j;
  try {
    j = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("malformed JSON at " + line_col(text, e.byte > 0 ? e.byte - 1 : 0) + ": " +
                     e.what());
  }
  return point_set_from_json(field, j);
}

ConstructionTrace trace_from_json(const Json& j) {
  ConstructionTrace t;
  t.field = Field::parse(j.at("field").get<std::string>());
  if (j.contains("options")) {
    const Json& o = j.at("options");
    t.options.exponent_rule = o.value("exponent_rule", std::string("stabilized")) == "full-valuation"
                                  ? ExponentRule::FullValuation
                                  : ExponentRule::Stabilized;
    t.options.reduction =
        o.value("reduction", std::string("short")) == "hermite" ? Reduction::Hermite : Reduction::Short;
    t.options.crt_norm_limit = o.value("crt_norm_limit", std::uint64_t{0});
    t.options.residue_guard = o.value("residue_guard", t.options.residue_guard);
    t.options.factor_bound = o.value("factor_bound", t.options.factor_bound);
    t.options.max_candidates = o.value("max_candidates", t.options.max_candidates);
  }
  for (const auto& E : j.at("chain")) t.chain.push_back(point_set_from_json(t.field, E));
  return t;
}

}  // namespace uset
