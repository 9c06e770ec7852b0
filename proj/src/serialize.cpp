#include "isosep/serialize.hpp"

#include "isosep/errors.hpp"

namespace isosep::json_io {

namespace {

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) {
    throw InvalidInput(std::string("missing field '") + name + "'");
  }
  return j.at(name);
}

std::int64_t as_int(const json& j, const char* what) {
  if (!j.is_number_integer()) throw InvalidInput(std::string(what) + " must be an integer");
  return j.get<std::int64_t>();
}

std::size_t as_count(const json& j, const char* what) {
  const std::int64_t v = as_int(j, what);
  if (v < 0) throw InvalidInput(std::string(what) + " must be non-negative");
  return static_cast<std::size_t>(v);
}

}  // namespace

json to_json(const Rational& r) { return r.to_string(); }
json to_json(const ExtRational& r) { return r.to_string(); }

Rational rational_from_json(const json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  throw InvalidInput("rational must be a string \"p/q\" or an integer");
}

std::vector<std::int64_t> parse_free_word(const std::string& text) {
  std::vector<std::int64_t> letters;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (ch < 'a' || ch > 'z') throw InvalidInput("bad free-group letter in '" + text + "'");
    std::int64_t l = ch - 'a' + 1;
    if (i + 1 < text.size() && text[i + 1] == '\'') {
      l = -l;
      ++i;
    }
    letters.push_back(l);
  }
  return letters;
}

std::string format_free_word(const std::vector<std::int64_t>& letters) {
  std::string s;
  for (std::int64_t l : letters) {
    s += static_cast<char>('a' + (l > 0 ? l : -l) - 1);
    if (l < 0) s += '\'';
  }
  return s;
}

json to_json(const Point& p) {
  switch (p.kind) {
    case PointKind::lattice: return p.coords;
    case PointKind::word: return format_free_word(p.coords);
    case PointKind::vertex:
    case PointKind::integer: return p.coords.at(0);
  }
  return nullptr;
}

Point point_from_json(const MetricSpace& space, const json& j) {
  Point p;
  switch (space.base().kind()) {
    case SpaceKind::zd:
      if (j.is_number_integer()) {
        p = Point::lattice({j.get<std::int64_t>()});
      } else if (j.is_array()) {
        std::vector<std::int64_t> v;
        for (const json& c : j) v.push_back(as_int(c, "lattice coordinate"));
        p = Point::lattice(std::move(v));
      } else {
        throw InvalidInput("lattice point must be an integer array");
      }
      break;
    case SpaceKind::free:
      if (!j.is_string()) throw InvalidInput("free-group point must be a word string");
      p = Point::word(parse_free_word(j.get<std::string>()));
      break;
    case SpaceKind::discrete_shift: p = Point::integer(as_int(j, "shift point")); break;
    case SpaceKind::finite_graph: p = Point::vertex(as_int(j, "vertex id")); break;
    case SpaceKind::scaled: break;
  }
  space.require_point(p);
  return p;
}

json to_json(const PointSet& set) {
  json a = json::array();
  for (const Point& p : set) a.push_back(to_json(p));
  return a;
}

PointSet points_from_json(const MetricSpace& space, const json& j) {
  if (!j.is_array()) throw InvalidInput("point list must be an array");
  PointSet out;
  for (const json& e : j) out.push_back(point_from_json(space, e));
  return out;
}

json to_json(const MetricSpace& space) {
  switch (space.kind()) {
    case SpaceKind::zd:
      return {{"kind", "zd"}, {"dim", space.dim()}, {"norm", space.norm() == Norm::l1 ? "l1" : "linf"}};
    case SpaceKind::free: return {{"kind", "free"}, {"rank", space.rank()}};
    case SpaceKind::discrete_shift: return {{"kind", "discrete_shift"}};
    case SpaceKind::finite_graph: {
      if (!space.has_edge_list()) throw InvalidInput("table-defined spaces have no JSON form");
      json edges = json::array();
      for (const WeightedEdge& e : space.edges()) edges.push_back({e.u, e.v, e.weight.to_string()});
      return {{"kind", "finite_graph"}, {"n", space.vertex_count()}, {"edges", edges}};
    }
    case SpaceKind::scaled:
      return {{"kind", "scaled"}, {"factor", space.factor().to_string()}, {"inner", to_json(space.inner())}};
  }
  return nullptr;
}

MetricSpace space_from_json(const json& j) {
  const std::string kind = field(j, "kind").get<std::string>();
  if (kind == "zd") {
    const std::string norm = j.value("norm", std::string("linf"));
    if (norm != "l1" && norm != "linf") throw InvalidInput("norm must be \"l1\" or \"linf\"");
    return MetricSpace::zd(static_cast<int>(as_int(field(j, "dim"), "dim")),
                           norm == "l1" ? Norm::l1 : Norm::linf);
  }
  if (kind == "free") return MetricSpace::free(static_cast<int>(as_int(field(j, "rank"), "rank")));
  if (kind == "discrete_shift") return MetricSpace::discrete_shift();
  if (kind == "finite_graph") {
    std::vector<WeightedEdge> edges;
    const json& list = field(j, "edges");
    if (!list.is_array()) throw InvalidInput("edges must be an array");
    for (const json& e : list) {
      if (!e.is_array() || e.size() != 3) throw InvalidInput("edge must be [u, v, \"w\"]");
      edges.push_back({static_cast<int>(as_int(e[0], "edge endpoint")),
                       static_cast<int>(as_int(e[1], "edge endpoint")), rational_from_json(e[2])});
    }
    return MetricSpace::finite_graph(static_cast<int>(as_int(field(j, "n"), "n")), std::move(edges));
  }
  if (kind == "scaled") {
    return MetricSpace::scaled(rational_from_json(field(j, "factor")), space_from_json(field(j, "inner")));
  }
  throw InvalidInput("unknown space kind '" + kind + "'");
}

json to_json(const Generator& g) {
  switch (g.kind()) {
    case GeneratorKind::translation: return {{"kind", "translation"}, {"v", g.vector()}};
    case GeneratorKind::leftmul: return {{"kind", "leftmul"}, {"w", format_free_word(g.word())}};
    case GeneratorKind::perm: return {{"kind", "perm"}, {"p", g.permutation()}};
    case GeneratorKind::shift: return {{"kind", "shift"}};
  }
  return nullptr;
}

Generator generator_from_json(const json& j) {
  const std::string kind = field(j, "kind").get<std::string>();
  if (kind == "translation") {
    std::vector<std::int64_t> v;
    for (const json& c : field(j, "v")) v.push_back(as_int(c, "translation component"));
    return Generator::translation(std::move(v));
  }
  if (kind == "leftmul") return Generator::leftmul(parse_free_word(field(j, "w").get<std::string>()));
  if (kind == "perm") {
    std::vector<int> p;
    for (const json& c : field(j, "p")) p.push_back(static_cast<int>(as_int(c, "perm entry")));
    return Generator::perm(std::move(p));
  }
  if (kind == "shift") return Generator::shift();
  throw InvalidInput("unknown generator kind '" + kind + "'");
}

json to_json(const IsometryWord& w) { return w.letters(); }

IsometryWord word_from_json(const json& j) {
  if (!j.is_array()) throw InvalidInput("word must be an array of signed generator indices");
  std::vector<int> letters;
  for (const json& l : j) letters.push_back(static_cast<int>(as_int(l, "word letter")));
  return IsometryWord(std::move(letters));
}

json to_json(const OrbitBudget& b) {
  return {{"max_points", b.max_points}, {"max_word_length", b.max_word_length}};
}

OrbitBudget budget_from_json(const json& j) {
  OrbitBudget b;
  if (j.contains("max_points")) b.max_points = as_count(j.at("max_points"), "max_points");
  if (j.contains("max_word_length")) {
    b.max_word_length = as_count(j.at("max_word_length"), "max_word_length");
  }
  b.validate();
  return b;
}

json weighted_to_json(const WeightedPointSet& P, const char* key) {
  json a = json::array();
  for (const WeightedPoint& wp : P) a.push_back({{"point", to_json(wp.point)}, {key, wp.eps.to_string()}});
  return a;
}

WeightedPointSet weighted_from_json(const MetricSpace& space, const json& j, const char* key,
                                    std::optional<Rational> default_weight) {
  if (!j.is_array()) throw InvalidInput("weighted point list must be an array");
  WeightedPointSet out;
  for (const json& e : j) {
    if (!e.is_object()) {
      if (!default_weight) throw InvalidInput(std::string("entry needs {\"point\", \"") + key + "\"}");
      out.push_back({point_from_json(space, e), *default_weight});
      continue;
    }
    Rational w = e.contains(key) ? rational_from_json(e.at(key))
                                 : (default_weight ? *default_weight
                                                   : throw InvalidInput(std::string("missing field '") +
                                                                        key + "'"));
    out.push_back({point_from_json(space, field(e, "point")), w});
  }
  return out;
}

InstanceFile instance_from_json(const json& j) {
  try {
    if (!j.is_object()) throw InvalidInput("instance must be a JSON object");
    MetricSpace space = space_from_json(field(j, "space"));
    std::vector<Generator> gens;
    const json& gl = field(j, "generators");
    if (!gl.is_array()) throw InvalidInput("generators must be an array");
    for (const json& g : gl) gens.push_back(generator_from_json(g));
    InstanceFile f{GeneratedAction(space, std::move(gens)), {}, {}, {}, {}, {}, {}, {}, {},
                   {}, {}, {}, {}, {}, {}, {}};
    if (j.contains("budget")) f.budget = budget_from_json(j.at("budget"));
    const bool discrete = space.is_discrete();
    if (j.contains("P")) {
      f.P = weighted_from_json(space, j.at("P"), "eps",
                               discrete ? std::optional<Rational>(Rational(1)) : std::nullopt);
    }
    if (j.contains("Q")) f.Q = points_from_json(space, j.at("Q"));
    if (j.contains("C")) f.C = weighted_from_json(space, j.at("C"), "delta");
    if (j.contains("D")) f.D = points_from_json(space, j.at("D"));
    if (j.contains("tuple")) f.tuple = points_from_json(space, j.at("tuple"));
    if (j.contains("eps")) f.eps = rational_from_json(j.at("eps"));
    if (j.contains("n")) f.n = as_count(j.at("n"), "n");
    if (j.contains("anchors")) f.anchors = points_from_json(space, j.at("anchors"));
    if (j.contains("obstacles")) f.obstacles = weighted_from_json(space, j.at("obstacles"), "eps");
    if (j.contains("point")) f.point = point_from_json(space, j.at("point"));
    if (j.contains("points")) f.points = points_from_json(space, j.at("points"));
    if (j.contains("oracle_bound")) f.oracle_bound = as_count(j.at("oracle_bound"), "oracle_bound");
    if (j.contains("kind")) f.kind = j.at("kind").get<std::string>();
    if (j.contains("seed")) f.seed = j.at("seed").get<std::uint64_t>();
    return f;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("instance schema: ") + e.what());
  }
}

json to_json(const InstanceSpec& spec) {
  json j = {{"kind", spec.kind},
            {"seed", spec.seed},
            {"space", to_json(spec.action.space())},
            {"generators", json::array()}};
  for (const Generator& g : spec.action.generators()) j["generators"].push_back(to_json(g));
  if (spec.is_compact()) {
    j["C"] = weighted_to_json(spec.C, "delta");
    j["D"] = to_json(spec.D);
  } else {
    j["P"] = weighted_to_json(spec.P, "eps");
    j["Q"] = to_json(spec.Q);
  }
  return j;
}

InstanceSpec to_instance_spec(const InstanceFile& file) {
  InstanceSpec spec{file.kind.value_or("file"), file.seed.value_or(0), {}, file.action, file.P,
                    file.Q, file.C, file.D};
  if (spec.kind == "compact1" || (file.P.empty() && !file.C.empty())) spec.kind = "compact1";
  return spec;
}

json to_json(const RecursionTrace& trace, bool include_enlarged) {
  json levels = json::array();
  for (const TraceLevel& l : trace.levels) {
    json reach = json::array();
    for (const ReachWitness& r : l.reach) {
      reach.push_back({{"y", to_json(r.target)}, {"witness", to_json(r.witness)}});
    }
    json level = {{"pivot", to_json(l.pivot)},
                  {"eps", l.pivot_eps.to_string()},
                  {"escape", to_json(l.escape)},
                  {"q0", reach},
                  {"q_size", l.target_count},
                  {"q_prime_size", l.enlarged.size()},
                  {"restarts", l.restarts},
                  {"case", to_string(l.outcome)},
                  {"fallback_y", l.fallback_target ? to_json(*l.fallback_target) : json(nullptr)},
                  {"h", to_json(l.inner)},
                  {"g", to_json(l.result)}};
    if (include_enlarged) level["q_prime"] = to_json(l.enlarged);
    levels.push_back(std::move(level));
  }
  return {{"levels", levels}};
}

json certificate_to_json(const SeparationCertificate& cert, bool include_enlarged) {
  json achieved = json::array();
  for (std::size_t i = 0; i < cert.achieved.size(); ++i) {
    achieved.push_back({"p" + std::to_string(i), cert.achieved[i].second.to_string()});
  }
  return {{"status", "ok"},
          {"word", to_json(cert.word)},
          {"achieved", achieved},
          {"ratio", cert.ratio.to_string()},
          {"explored", cert.explored},
          {"trace", to_json(cert.trace, include_enlarged)}};
}

json to_json(const CompactSeparationResult& r, bool include_enlarged) {
  return {{"status", "ok"},
          {"epsilon", r.epsilon.to_string()},
          {"cover", weighted_to_json(r.cover, "delta")},
          {"net_P", weighted_to_json(r.net_P, "eps")},
          {"net_Q", to_json(r.net_Q)},
          {"final_distance", r.final_distance.to_string()},
          {"certificate", certificate_to_json(r.certificate, include_enlarged)}};
}

json to_json(const FullExistenceResult& r, bool include_enlarged) {
  return {{"status", "ok"},
          {"sigma", to_json(r.sigma)},
          {"realization", to_json(r.realization)},
          {"certificate", certificate_to_json(r.certificate, include_enlarged)}};
}

}  // namespace isosep::json_io
