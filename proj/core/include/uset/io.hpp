#pragma once

// JSON encoding of the library's values and reports. Integers that may exceed
// 64 bits are written as decimal strings.

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "uset/analytics.hpp"
#include "uset/construct.hpp"
#include "uset/field.hpp"
#include "uset/point_set.hpp"
#include "uset/search.hpp"
#include "uset/universal.hpp"
#include "uset/walk.hpp"

namespace uset {

using Json = nlohmann::ordered_json;

Json to_json(const Integer& x);
Json to_json(const QuadInt& x);
Json to_json(const PrimeIdeal& P);
Json to_json(const FactoredIdeal& I);
/// {"field": ..., "elements": [{"a": "...", "b": "..."}, ...]}
Json to_json(const PointSet& S);
Json to_json(const UniversalityReport& r);
Json to_json(const ConstructionStep& s);
Json to_json(const ConstructionTrace& t);
Json to_json(const SearchResult& r);
Json to_json(const GammaEstimate& g);
Json to_json(const BoundCheck& b);
Json to_json(const MonteCarlo& m);
Json to_json(const LogInequality& l);
Json to_json(const SimulationResult& s);

/// Accepts a decimal string or a JSON integer.
Integer integer_from_json(const Json& j);
QuadInt quadint_from_json(const Field& field, const Json& j);
PrimeIdeal prime_from_json(const Field& field, const Json& j);

/// A set is either a bare array of {"a", "b"} objects or an object with an
/// "elements" array (and optionally a "field" that must match). Errors are
/// InputError naming the line and column or the offending element.
PointSet parse_point_set(const Field& field, std::string_view text);
PointSet point_set_from_json(const Field& field, const Json& j);

/// Reads the field and chain back from to_json(ConstructionTrace). Steps are
/// informational and not restored.
ConstructionTrace trace_from_json(const Json& j);

}  // namespace uset
