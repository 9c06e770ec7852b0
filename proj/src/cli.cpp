#include "isosep/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "isosep/oracle.hpp"
#include "isosep/serialize.hpp"

namespace isosep::cli {

namespace {

using json_io::json;

struct Config {
  std::string subcommand;
  std::string in_path;
  std::string check_path;
  std::optional<std::size_t> budget_points;
  std::optional<std::size_t> budget_len;
  std::optional<std::uint64_t> seed;
  std::string format = "json";
  bool trace = false;
  std::optional<std::size_t> count;
  std::vector<std::string> kinds;
  std::optional<std::size_t> bound;
  std::size_t samples = 100;
};

// Outcome of a subcommand that found a problem in its input rather than
// failing to parse it.
struct Failure {
  int code;
  std::string message;
};

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidInput("'" + path + "' is not valid JSON: " + e.what());
  }
}

json_io::InstanceFile load_instance(const Config& cfg) {
  if (cfg.in_path.empty()) throw InvalidInput(cfg.subcommand + " needs --in PATH");
  json_io::InstanceFile f = json_io::instance_from_json(read_json(cfg.in_path));
  if (cfg.budget_points) f.budget.max_points = *cfg.budget_points;
  if (cfg.budget_len) f.budget.max_word_length = *cfg.budget_len;
  f.budget.validate();
  return f;
}

void emit(const Config& cfg, std::ostream& out, const json& payload, const std::string& table) {
  if (cfg.format == "table") {
    out << table;
  } else {
    out << payload.dump() << '\n';
  }
}

std::string certificate_table(const SeparationCertificate& cert, const WeightedPointSet& P,
                              bool trace) {
  std::ostringstream os;
  os << "word     " << cert.word.to_string() << " (length " << cert.word.length() << ")\n";
  os << "ratio    " << cert.ratio << '\n';
  os << "explored " << cert.explored << '\n';
  for (std::size_t i = 0; i < cert.achieved.size(); ++i) {
    os << "  p" << i << ' ' << cert.achieved[i].first.to_string() << "  d(gp,Q)="
       << cert.achieved[i].second << "  eps=" << P[i].eps << '\n';
  }
  if (trace) {
    for (std::size_t k = 0; k < cert.trace.levels.size(); ++k) {
      const TraceLevel& l = cert.trace.levels[k];
      os << "level " << k << ": pivot " << l.pivot.to_string() << " eps " << l.pivot_eps
         << " escape " << l.escape.to_string() << " |Q|=" << l.target_count
         << " |Q'|=" << l.enlarged.size() << " reach=" << l.reach.size()
         << " restarts=" << l.restarts << " case=" << to_string(l.outcome) << '\n';
    }
  }
  return os.str();
}

// Recomputes every distance claimed by a certificate JSON object.
std::vector<std::string> check_certificate(const GeneratedAction& action, const WeightedPointSet& P,
                                           const PointSet& Q, const json& claimed) {
  std::vector<std::string> problems;
  const IsometryWord word = json_io::word_from_json(claimed.at("word"));
  const SeparationCertificate fresh = evaluate_word(action, P, Q, word);
  const json& achieved = claimed.at("achieved");
  if (!achieved.is_array() || achieved.size() != P.size()) {
    problems.push_back("achieved list size does not match P");
  } else {
    for (std::size_t i = 0; i < P.size(); ++i) {
      const std::string label = "p" + std::to_string(i);
      if (achieved[i].at(0).get<std::string>() != label) problems.push_back("bad label at " + label);
      if (ExtRational::parse(achieved[i].at(1).get<std::string>()) != fresh.achieved[i].second) {
        problems.push_back(label + ": claimed " + achieved[i].at(1).get<std::string>() +
                           ", recomputed " + fresh.achieved[i].second.to_string());
      }
    }
  }
  if (ExtRational::parse(claimed.at("ratio").get<std::string>()) != fresh.ratio) {
    problems.push_back("ratio: claimed " + claimed.at("ratio").get<std::string>() +
                       ", recomputed " + fresh.ratio.to_string());
  }
  if (fresh.ratio < ExtRational(Rational(1, 3))) {
    problems.push_back("ratio " + fresh.ratio.to_string() + " below 1/3");
  }
  return problems;
}

int report_check(const std::vector<std::string>& problems, std::ostream& out, std::ostream& err) {
  json j = {{"status", problems.empty() ? "verified" : "mismatch"}, {"problems", problems}};
  out << j.dump() << '\n';
  for (const auto& p : problems) err << "check: " << p << '\n';
  return problems.empty() ? kOk : kMismatch;
}

SeparationOptions options_for(const json_io::InstanceFile& f) { return {f.budget, ReachMode::lazy}; }

int cmd_separate(const Config& cfg, std::ostream& out, std::ostream& err, bool discrete) {
  const json_io::InstanceFile f = load_instance(cfg);
  WeightedPointSet P = f.P;
  if (discrete) {
    for (WeightedPoint& wp : P) wp.eps = Rational(1);
  }
  if (!cfg.check_path.empty()) {
    return report_check(check_certificate(f.action, P, f.Q, read_json(cfg.check_path)), out, err);
  }
  const SeparationCertificate cert = discrete
                                         ? separate_discrete(f.action, points_of(P), f.Q, options_for(f))
                                         : separate_points(f.action, P, f.Q, options_for(f));
  emit(cfg, out, json_io::certificate_to_json(cert, cfg.trace), certificate_table(cert, P, cfg.trace));
  return kOk;
}

int cmd_compact(const Config& cfg, std::ostream& out, std::ostream& err) {
  const json_io::InstanceFile f = load_instance(cfg);
  const MetricSpace& space = f.action.space();
  if (!cfg.check_path.empty()) {
    const json claimed = read_json(cfg.check_path);
    const Rational eps = json_io::rational_from_json(claimed.at("epsilon"));
    const WeightedPointSet net_P = json_io::weighted_from_json(space, claimed.at("net_P"), "eps");
    const PointSet net_Q = json_io::points_from_json(space, claimed.at("net_Q"));
    std::vector<std::string> problems =
        check_certificate(f.action, net_P, net_Q, claimed.at("certificate"));
    const IsometryWord word = json_io::word_from_json(claimed.at("certificate").at("word"));
    const ExtRational final_d = set_distance(space, f.action.apply(word, points_of(f.C)), f.D);
    if (final_d.to_string() != claimed.at("final_distance").get<std::string>()) {
      problems.push_back("final_distance: recomputed " + final_d.to_string());
    }
    if (final_d < ExtRational(eps)) problems.push_back("d(gC, D) below epsilon");
    for (const WeightedPoint& wp : net_P) {
      if (wp.eps != eps * Rational(9)) problems.push_back("net_P weight is not 9 epsilon");
    }
    return report_check(problems, out, err);
  }
  const CompactSeparationResult r = separate_compact(f.action, f.C, f.D, options_for(f));
  std::ostringstream table;
  table << "epsilon  " << r.epsilon << "\ncover    " << r.cover.size() << " points\nd(gC,D)  "
        << r.final_distance << '\n'
        << certificate_table(r.certificate, r.net_P, cfg.trace);
  emit(cfg, out, json_io::to_json(r, cfg.trace), table.str());
  return kOk;
}

int cmd_sequence(const Config& cfg, std::ostream& out, std::ostream& err) {
  const json_io::InstanceFile f = load_instance(cfg);
  if (!f.eps) throw InvalidInput("sequence needs \"eps\"");
  const std::size_t n = f.n.value_or(cfg.count.value_or(10));
  const MetricSpace& space = f.action.space();

  std::vector<IsometryWord> words;
  if (!cfg.check_path.empty()) {
    const json claimed = read_json(cfg.check_path);
    for (const json& w : claimed.at("words")) words.push_back(json_io::word_from_json(w));
  } else {
    words = separated_sequence(f.action, f.tuple, *f.eps, n, options_for(f));
  }
  std::vector<PointSet> images;
  for (const IsometryWord& w : words) images.push_back(f.action.apply(w, f.tuple));
  std::vector<std::string> problems;
  if (words.size() != n) problems.push_back("expected " + std::to_string(n) + " words");
  for (std::size_t i = 0; i < images.size(); ++i) {
    for (std::size_t j = i + 1; j < images.size(); ++j) {
      for (const Point& x : images[i]) {
        for (const Point& y : images[j]) {
          if (space.distance(x, y) < *f.eps) {
            problems.push_back("elements " + std::to_string(i) + " and " + std::to_string(j) +
                               " closer than eps");
          }
        }
      }
    }
  }
  if (!cfg.check_path.empty()) return report_check(problems, out, err);
  if (!problems.empty()) throw std::logic_error("separated_sequence produced close tuples");

  json jw = json::array(), ji = json::array();
  std::ostringstream table;
  for (std::size_t i = 0; i < words.size(); ++i) {
    jw.push_back(json_io::to_json(words[i]));
    ji.push_back(json_io::to_json(images[i]));
    table << i << "  " << words[i].to_string() << "  ->";
    for (const Point& p : images[i]) table << ' ' << p.to_string();
    table << '\n';
  }
  emit(cfg, out, {{"status", "ok"}, {"eps", f.eps->to_string()}, {"words", jw}, {"images", ji}},
       table.str());
  return kOk;
}

int cmd_fullexist(const Config& cfg, std::ostream& out, std::ostream& err) {
  const json_io::InstanceFile f = load_instance(cfg);
  if (!cfg.check_path.empty()) {
    const json claimed = read_json(cfg.check_path);
    std::vector<std::string> problems =
        check_certificate(f.action, f.obstacles, f.anchors, claimed.at("certificate"));
    const IsometryWord sigma = json_io::word_from_json(claimed.at("sigma"));
    const PointSet realization = f.action.apply(invert(sigma), f.anchors);
    if (json_io::to_json(realization) != claimed.at("realization")) {
      problems.push_back("realization differs from sigma^-1(anchors)");
    }
    for (const WeightedPoint& b : f.obstacles) {
      for (const Point& r : realization) {
        if (f.action.space().distance(b.point, r) < b.eps * Rational(1, 3)) {
          problems.push_back("realization point " + r.to_string() + " too close to " + b.point.to_string());
        }
      }
    }
    return report_check(problems, out, err);
  }
  const FullExistenceResult r = full_existence_step(f.action, f.anchors, f.obstacles, options_for(f));
  std::ostringstream table;
  table << "sigma        " << r.sigma.to_string() << "\nrealization ";
  for (const Point& p : r.realization) table << ' ' << p.to_string();
  table << '\n';
  emit(cfg, out, json_io::to_json(r, cfg.trace), table.str());
  return kOk;
}

std::pair<Point, Rational> single_point(const json_io::InstanceFile& f, const char* what) {
  if (f.point && f.eps) return {*f.point, *f.eps};
  if (!f.P.empty()) return {f.P.front().point, f.P.front().eps};
  throw InvalidInput(std::string(what) + " needs \"point\" and \"eps\" (or a nonempty \"P\")");
}

int cmd_escape(const Config& cfg, std::ostream& out, std::ostream&) {
  const json_io::InstanceFile f = load_instance(cfg);
  const auto [p, eps] = single_point(f, "escape");
  std::size_t explored = 0;
  const IsometryWord a = find_escape(f.action, p, f.Q, eps, f.budget, &explored);
  const Point image = f.action.apply(a, p);
  const ExtRational d = set_distance(f.action.space(), {image}, f.Q);
  std::ostringstream table;
  table << "word   " << a.to_string() << "\nimage  " << image.to_string() << "\nd(ap,Q) " << d
        << "\nexplored " << explored << '\n';
  emit(cfg, out,
       {{"status", "ok"}, {"word", json_io::to_json(a)}, {"image", json_io::to_json(image)},
        {"distance", d.to_string()}, {"explored", explored}},
       table.str());
  return kOk;
}

int cmd_orbit(const Config& cfg, std::ostream& out, std::ostream&) {
  const json_io::InstanceFile f = load_instance(cfg);
  Point p = f.point ? *f.point : (f.P.empty() ? throw InvalidInput("orbit needs \"point\"") : f.P.front().point);
  const std::vector<OrbitEntry> entries = orbit_points(f.action, p, f.budget);
  json list = json::array();
  std::ostringstream table;
  for (const OrbitEntry& e : entries) {
    list.push_back({{"point", json_io::to_json(e.point)}, {"word", json_io::to_json(e.word)}});
    table << e.point.to_string() << "  " << e.word.to_string() << '\n';
  }
  emit(cfg, out, {{"status", "ok"}, {"count", entries.size()}, {"points", list}}, table.str());
  return kOk;
}

int cmd_net(const Config& cfg, std::ostream& out, std::ostream&) {
  const json_io::InstanceFile f = load_instance(cfg);
  if (!f.eps) throw InvalidInput("net needs \"eps\"");
  const PointSet source = f.points.empty() ? points_of(f.P) : f.points;
  const PointSet net = greedy_epsilon_net(f.action.space(), source, *f.eps);
  std::ostringstream table;
  for (const Point& p : net) table << p.to_string() << '\n';
  emit(cfg, out, {{"status", "ok"}, {"eps", f.eps->to_string()}, {"net", json_io::to_json(net)}},
       table.str());
  return kOk;
}

int cmd_verify(const Config& cfg, std::ostream& out, std::ostream& err) {
  const json_io::InstanceFile f = load_instance(cfg);
  const MetricSpace& space = f.action.space();
  SplitMix64 rng(cfg.seed.value_or(0));
  std::vector<PointTriple> triples;
  std::vector<std::pair<Point, Point>> pairs;
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    triples.push_back({sample_point(space, rng), sample_point(space, rng), sample_point(space, rng)});
    pairs.emplace_back(triples.back()[0], triples.back()[1]);
  }
  const MetricReport metric = validate_metric(space, triples);
  const IsometryReport iso = verify_isometry(f.action, pairs);

  json mv = json::array(), iv = json::array();
  for (const MetricViolation& v : metric.violations) {
    mv.push_back({{"property", v.property}, {"points", json_io::to_json(v.points)}, {"detail", v.detail}});
    err << "metric violation (" << v.property << "): " << v.detail << '\n';
  }
  for (const IsometryViolation& v : iso.violations) {
    iv.push_back({{"letter", v.letter}, {"x", json_io::to_json(v.x)}, {"y", json_io::to_json(v.y)},
                  {"detail", v.detail}});
    err << "isometry violation (letter " << v.letter << "): " << v.detail << '\n';
  }
  const bool ok = metric.ok() && iso.ok();
  std::ostringstream table;
  table << "metric   " << (metric.ok() ? "ok" : "VIOLATED") << " (" << metric.checked << " triples"
        << (metric.exhaustive ? ", exhaustive" : "") << ")\nisometry " << (iso.ok() ? "ok" : "VIOLATED")
        << " (" << iso.checked << " checks" << (iso.exhaustive ? ", exhaustive" : "") << ")\n";
  emit(cfg, out,
       {{"status", ok ? "ok" : "violation"},
        {"metric", {{"exhaustive", metric.exhaustive}, {"checked", metric.checked}, {"violations", mv}}},
        {"isometry", {{"exhaustive", iso.exhaustive}, {"checked", iso.checked}, {"violations", iv}}}},
       table.str());
  return ok ? kOk : kViolation;
}

json differential_json(const DifferentialReport& r, const std::string& kind, std::uint64_t seed) {
  json j = {{"kind", kind},
            {"seed", seed},
            {"status", to_string(r.status)},
            {"mismatches", r.mismatches},
            {"oracle_states", r.verdict.states},
            {"oracle_valid", r.verdict.valid_words.size()},
            {"oracle_best_ratio", r.verdict.best_ratio.to_string()},
            {"oracle_best_word", json_io::to_json(r.verdict.best_word)}};
  if (r.certificate) {
    j["word"] = json_io::to_json(r.certificate->word);
    j["ratio"] = r.certificate->ratio.to_string();
  }
  return j;
}

int cmd_oracle(const Config& cfg, std::ostream& out, std::ostream& err) {
  const std::size_t bound = cfg.bound.value_or(8);
  std::vector<json> reports;
  bool mismatch = false, exhausted = false;
  auto record = [&](const DifferentialReport& r, const std::string& kind, std::uint64_t seed) {
    mismatch |= r.status == DifferentialStatus::mismatch;
    exhausted |= r.status == DifferentialStatus::exhausted;
    for (const auto& m : r.mismatches) err << kind << " seed " << seed << ": " << m << '\n';
    reports.push_back(differential_json(r, kind, seed));
  };
  if (!cfg.in_path.empty()) {
    const json_io::InstanceFile f = load_instance(cfg);
    const InstanceSpec spec = json_io::to_instance_spec(f);
    record(differential_check(spec, f.budget, f.oracle_bound.value_or(bound)), spec.kind, spec.seed);
  } else {
    OrbitBudget budget;
    if (cfg.budget_points) budget.max_points = *cfg.budget_points;
    if (cfg.budget_len) budget.max_word_length = *cfg.budget_len;
    const std::vector<std::string> kinds = cfg.kinds.empty() ? std::vector<std::string>{"zd2"} : cfg.kinds;
    const std::uint64_t seed = cfg.seed.value_or(0);
    for (const std::string& kind : kinds) {
      for (std::size_t i = 0; i < cfg.count.value_or(1); ++i) {
        record(differential_check(random_instance(kind, seed + i), budget, bound), kind, seed + i);
      }
    }
  }
  std::ostringstream table;
  for (const json& r : reports) {
    table << r["kind"].get<std::string>() << " seed " << r["seed"] << ": " << r["status"].get<std::string>()
          << '\n';
  }
  json payload = reports.size() == 1 ? reports.front() : json{{"reports", reports}};
  emit(cfg, out, payload, table.str());
  if (mismatch) return kMismatch;
  return exhausted ? kBudgetExhausted : kOk;
}

int cmd_experiment(const Config& cfg, std::ostream& out, std::ostream& err) {
  OrbitBudget budget;
  if (cfg.budget_points) budget.max_points = *cfg.budget_points;
  if (cfg.budget_len) budget.max_word_length = *cfg.budget_len;
  budget.validate();
  const std::vector<std::string> kinds = cfg.kinds.empty() ? std::vector<std::string>{"zd2"} : cfg.kinds;
  const ExperimentResult r =
      ratio_experiment(kinds, cfg.count.value_or(100), cfg.seed.value_or(0), budget, cfg.bound.value_or(8));
  out << r.to_csv();
  err << "min_cert_ratio=" << (r.min_cert_ratio ? r.min_cert_ratio->to_string() : "none") << '\n';
  const bool mismatch = std::any_of(r.rows.begin(), r.rows.end(),
                                    [](const ExperimentRow& row) { return row.status == "mismatch"; });
  return mismatch ? kMismatch : kOk;
}

std::vector<std::string> split_commas(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (const std::string& s : raw) {
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) out.push_back(item);
    }
  }
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Separation certificates for isometric group actions"};
  app.require_subcommand(1);

  struct Command {
    const char* name;
    const char* help;
  };
  const Command commands[] = {
      {"separate", "move weighted points P at least eps_p/3 away from Q"},
      {"compact", "separate a finite set C from D by the derived epsilon"},
      {"discrete", "find g with gP disjoint from Q (0/1 metric)"},
      {"sequence", "eps-separated sequence of translates of a tuple"},
      {"fullexist", "move obstacles off anchors and transport the anchors back"},
      {"escape", "first orbit point outside every eps-ball around Q"},
      {"orbit", "dump the breadth-first orbit stream"},
      {"net", "greedy eps-net of a point list"},
      {"verify", "check metric axioms and generator isometry"},
      {"oracle", "differential check against brute force"},
      {"experiment", "ratio experiment over seeded random instances (CSV)"},
  };
  std::vector<std::string> raw_kinds;
  for (const Command& s : commands) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    sub->add_option("--in", cfg.in_path, "instance JSON file");
    sub->add_option("--budget-points", cfg.budget_points, "orbit point budget")->check(CLI::PositiveNumber);
    sub->add_option("--budget-len", cfg.budget_len, "word length budget")->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "base seed");
    sub->add_option("--format", cfg.format, "json or table")->check(CLI::IsMember({"json", "table"}));
    sub->add_flag("--trace", cfg.trace, "include full recursion trace");
    sub->add_option("--check", cfg.check_path, "re-verify a previously emitted result");
    if (std::string(s.name) == "oracle" || std::string(s.name) == "experiment") {
      sub->add_option("--kind", raw_kinds, "instance kinds (comma separated)");
      sub->add_option("--n", cfg.count, "instances per kind")->check(CLI::PositiveNumber);
      sub->add_option("--bound", cfg.bound, "oracle word-length bound");
    }
    if (std::string(s.name) == "sequence") {
      sub->add_option("--n", cfg.count, "sequence length when the file has none")->check(CLI::PositiveNumber);
    }
    if (std::string(s.name) == "verify") {
      sub->add_option("--samples", cfg.samples, "random triples / pairs to test");
    }
    sub->callback([&cfg, name = std::string(s.name)] { cfg.subcommand = name; });
  }

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidInput;
  }
  cfg.kinds = split_commas(raw_kinds);

  try {
    const std::string& c = cfg.subcommand;
    if (c == "separate") return cmd_separate(cfg, out, err, false);
    if (c == "discrete") return cmd_separate(cfg, out, err, true);
    if (c == "compact") return cmd_compact(cfg, out, err);
    if (c == "sequence") return cmd_sequence(cfg, out, err);
    if (c == "fullexist") return cmd_fullexist(cfg, out, err);
    if (c == "escape") return cmd_escape(cfg, out, err);
    if (c == "orbit") return cmd_orbit(cfg, out, err);
    if (c == "net") return cmd_net(cfg, out, err);
    if (c == "verify") return cmd_verify(cfg, out, err);
    if (c == "oracle") return cmd_oracle(cfg, out, err);
    if (c == "experiment") return cmd_experiment(cfg, out, err);
    err << "unknown subcommand\n";
    return kInvalidInput;
  } catch (const SeparationExhausted& e) {
    err << "budget exhausted: " << e.what() << '\n';
    if (cfg.format == "json") {
      out << json{{"status", "budget-exhausted"},
                  {"explored", e.explored()},
                  {"message", e.what()},
                  {"partial_trace", json_io::to_json(e.partial(), false)}}
                 .dump()
          << '\n';
    }
    return kBudgetExhausted;
  } catch (const BudgetExhausted& e) {
    err << "budget exhausted: " << e.what() << '\n';
    if (cfg.format == "json") {
      out << json{{"status", "budget-exhausted"}, {"explored", e.explored()}, {"message", e.what()}}.dump()
          << '\n';
    }
    return kBudgetExhausted;
  } catch (const InvalidInput& e) {
    err << "invalid input: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const json::exception& e) {
    err << "invalid input: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const std::overflow_error& e) {
    err << "arithmetic overflow: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
}

}  // namespace isosep::cli
