#pragma once

// JSON forms of every value that crosses the CLI boundary.
//
// Rationals are strings ("n" or "p/q"; integers are accepted on input).
// Points: lattice -> [x, y, ...], free word -> "ab'" (prime = inverse,
// "" = identity), vertex / shift integer -> number.
// Spaces: {"kind":"zd","dim":2,"norm":"linf"} | {"kind":"free","rank":2}
//   | {"kind":"discrete_shift"} | {"kind":"finite_graph","n":4,"edges":[[0,1,"1"]]}
//   | {"kind":"scaled","factor":"3/2","inner":{...}}.
// Generators: {"kind":"translation","v":[1,0]} | {"kind":"leftmul","w":"ab'"}
//   | {"kind":"perm","p":[1,2,3,0]} | {"kind":"shift"}.

#include <optional>
#include <string>

#include <json.hpp>

#include "isosep/oracle.hpp"
#include "isosep/separation.hpp"

namespace isosep::json_io {

using nlohmann::json;

json to_json(const Rational& r);
json to_json(const ExtRational& r);
Rational rational_from_json(const json& j);

json to_json(const Point& p);
Point point_from_json(const MetricSpace& space, const json& j);
json to_json(const PointSet& set);
PointSet points_from_json(const MetricSpace& space, const json& j);

/// Free-group word text: letters a..z, a trailing ' inverts the letter.
std::vector<std::int64_t> parse_free_word(const std::string& text);
std::string format_free_word(const std::vector<std::int64_t>& letters);

json to_json(const MetricSpace& space);
MetricSpace space_from_json(const json& j);

json to_json(const Generator& g);
Generator generator_from_json(const json& j);

json to_json(const IsometryWord& w);
IsometryWord word_from_json(const json& j);

json to_json(const OrbitBudget& b);
/// Missing fields keep the defaults.
OrbitBudget budget_from_json(const json& j);

/// [{"point":..., key:"..."}]
json weighted_to_json(const WeightedPointSet& P, const char* key);
WeightedPointSet weighted_from_json(const MetricSpace& space, const json& j, const char* key,
                                    std::optional<Rational> default_weight = std::nullopt);

/// Everything an instance file may carry; subcommands read what they need.
struct InstanceFile {
  GeneratedAction action;
  OrbitBudget budget;
  WeightedPointSet P;
  PointSet Q;
  WeightedPointSet C;  // weights are the deltas
  PointSet D;
  PointSet tuple;
  std::optional<Rational> eps;
  std::optional<std::size_t> n;
  PointSet anchors;
  WeightedPointSet obstacles;
  std::optional<Point> point;
  PointSet points;
  std::optional<std::size_t> oracle_bound;
  std::optional<std::string> kind;
  std::optional<std::uint64_t> seed;
};

/// Throws InvalidInput (with the offending field) on any schema problem.
InstanceFile instance_from_json(const json& j);

json to_json(const InstanceSpec& spec);
/// Wraps a parsed file as an instance for the differential checker.
InstanceSpec to_instance_spec(const InstanceFile& file);

json to_json(const RecursionTrace& trace, bool include_enlarged);

/// {"status":"ok","word":[...],"achieved":[["p0","6"],...],"ratio":"1","explored":N,"trace":{...}}
json certificate_to_json(const SeparationCertificate& cert, bool include_enlarged);

json to_json(const CompactSeparationResult& r, bool include_enlarged);
json to_json(const FullExistenceResult& r, bool include_enlarged);

}  // namespace isosep::json_io
