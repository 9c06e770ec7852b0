// Acceptance suite: one PASS/FAIL line per criterion, exact comparisons only.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "isosep/cli.hpp"
#include "isosep/kernels/lattice_distance.hpp"
#include "isosep/oracle.hpp"
#include "isosep/serialize.hpp"

using namespace isosep;
using json_io::json;

namespace {

const Rational kThird(1, 3);

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args) {
  args.insert(args.begin(), "isosep");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& body) {
  const std::string path = std::string(ISOSEP_TEST_TMP) + "/" + name;
  std::ofstream(path) << body;
  return path;
}

// Restart bound, gathered across every run.
struct RestartAudit {
  std::size_t levels = 0;
  std::size_t violations = 0;

  void add(const SeparationCertificate& c) {
    for (const TraceLevel& l : c.trace.levels) {
      ++levels;
      if (l.restarts > l.target_count) ++violations;
    }
  }
};

RestartAudit g_restarts;
std::vector<std::pair<InstanceSpec, SeparationCertificate>> g_zd2;

Outcome criterion1() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t ok = 0;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    InstanceSpec inst = random_instance("zd2", seed);
    try {
      SeparationCertificate c = separate_points(inst.action, inst.P, inst.Q);
      g_restarts.add(c);
      const SeparationCertificate fresh = evaluate_word(inst.action, inst.P, inst.Q, c.word);
      bool good = fresh.achieved == c.achieved && fresh.ratio == c.ratio && c.ratio >= ExtRational(kThird);
      for (std::size_t i = 0; i < inst.P.size(); ++i) {
        good = good && fresh.achieved[i].second >= ExtRational(inst.P[i].eps / Rational(3));
      }
      if (good) {
        ++ok;
      } else {
        o.fail("seed " + std::to_string(seed) + ": postcondition violated");
      }
      g_zd2.emplace_back(std::move(inst), std::move(c));
    } catch (const std::exception& e) {
      o.fail("seed " + std::to_string(seed) + ": " + e.what());
    }
  }
  const double secs = seconds_since(t0);
  if (secs >= 30) o.fail("took " + std::to_string(secs) + " s");
  if (o.pass) o.detail = std::to_string(ok) + "/500 certified, " + std::to_string(secs).substr(0, 5) + " s";
  return o;
}

Outcome criterion2() {
  Outcome o;
  std::size_t checked = 0, contained = 0;
  for (const auto& [inst, cert] : g_zd2) {
    const OracleVerdict v = brute_force_separate(inst.action, inst.P, inst.Q, 8);
    const DifferentialReport r = audit_certificate(inst.action, inst.P, inst.Q, cert, v, 8, OrbitBudget{});
    ++checked;
    if (cert.word.length() <= 8) contained += oracle_accepts(v, inst.action, inst.P, cert.word);
    if (!r.ok()) {
      o.fail("seed " + std::to_string(inst.seed) + ": " +
             (r.mismatches.empty() ? std::string("not ok") : r.mismatches.front()));
    }
  }
  if (checked != 500) o.fail("only " + std::to_string(checked) + " certificates available");
  if (o.pass) {
    o.detail = std::to_string(checked) + " audited, " + std::to_string(contained) +
               " within L=8 all found by the oracle, 0 mismatches";
  }
  return o;
}

Outcome criterion3() {
  Outcome o;
  InstanceSizes sizes;
  sizes.p_max = 3;
  sizes.q_max = 5;
  std::size_t ok = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const InstanceSpec inst = random_instance("shift", seed, sizes);
    try {
      const SeparationCertificate c = separate_discrete(inst.action, points_of(inst.P), inst.Q);
      g_restarts.add(c);
      bool disjoint = true;
      for (const Point& gp : inst.action.apply(c.word, points_of(inst.P))) {
        disjoint = disjoint && std::find(inst.Q.begin(), inst.Q.end(), gp) == inst.Q.end();
      }
      if (disjoint) {
        ++ok;
      } else {
        o.fail("seed " + std::to_string(seed) + ": gP meets Q");
      }
    } catch (const std::exception& e) {
      o.fail("seed " + std::to_string(seed) + ": " + e.what());
    }
  }
  if (o.pass) o.detail = std::to_string(ok) + "/200 with gP disjoint from Q";
  return o;
}

Outcome criterion4() {
  Outcome o;
  InstanceSizes sizes;
  sizes.p_max = 4;
  sizes.q_max = 4;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const InstanceSpec inst = random_instance("compact1", seed, sizes);
    const std::string tag = "seed " + std::to_string(seed) + ": ";
    try {
      const CompactSeparationResult r = separate_compact(inst.action, inst.C, inst.D);
      g_restarts.add(r.certificate);
      Rational min_delta = r.cover.front().eps;
      for (const WeightedPoint& a : r.cover) min_delta = std::min(min_delta, a.eps);
      if (r.epsilon != min_delta / Rational(18)) o.fail(tag + "epsilon is not min delta / 18");
      const MetricSpace& s = inst.action.space();
      const PointSet gP = inst.action.apply(r.certificate.word, points_of(r.net_P));
      if (set_distance(s, gP, r.net_Q) < ExtRational(r.epsilon * Rational(3))) o.fail(tag + "d(gP,Q) < 3 eps");
      const ExtRational dC = set_distance(s, inst.action.apply(r.certificate.word, points_of(inst.C)), inst.D);
      if (dC < ExtRational(r.epsilon)) o.fail(tag + "d(gC,D) < eps");
      if (dC != r.final_distance) o.fail(tag + "reported final distance differs");
    } catch (const std::exception& e) {
      o.fail(tag + e.what());
    }
  }
  if (o.pass) o.detail = "50/50 compact chains exact";
  return o;
}

Outcome criterion5() {
  Outcome o;
  const GeneratedAction z(MetricSpace::zd(1, kernels::Norm::linf), {Generator::translation({1})});
  const GeneratedAction f(MetricSpace::free(2), {Generator::leftmul({1}), Generator::leftmul({2})});
  const std::size_t n = 10;
  std::size_t runs = 0, pairs = 0;
  for (const GeneratedAction* act : {&z, &f}) {
    for (std::size_t len = 1; len <= 3; ++len) {
      for (std::int64_t e = 1; e <= 2; ++e) {
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
          SplitMix64 rng(seed * 131 + len * 7 + static_cast<std::uint64_t>(e));
          PointSet tuple;
          while (tuple.size() < len) append_unique(tuple, sample_point(act->space(), rng));
          const Rational eps(e);
          const std::string tag = act->space().describe() + " len " + std::to_string(len) + ": ";

          json file = {{"space", json_io::to_json(act->space())},
                       {"generators", json::array()},
                       {"tuple", json_io::to_json(tuple)},
                       {"eps", eps.to_string()},
                       {"n", n},
                       {"budget", {{"max_word_length", 128}}}};
          for (const Generator& g : act->generators()) file["generators"].push_back(json_io::to_json(g));
          const CliRun r = cli({"sequence", "--in", write_temp("seq.json", file.dump())});
          if (r.code != 0) {
            o.fail(tag + "exit " + std::to_string(r.code) + " " + r.err);
            continue;
          }
          const json out = json::parse(r.out);
          std::vector<PointSet> images;
          for (std::size_t k = 0; k < out.at("words").size(); ++k) {
            const IsometryWord w = json_io::word_from_json(out["words"][k]);
            images.push_back(act->apply(w, tuple));
            if (json_io::to_json(images.back()) != out["images"][k]) o.fail(tag + "element does not reproduce");
          }
          if (images.size() != n) o.fail(tag + "wrong length");
          for (std::size_t i = 0; i < images.size(); ++i) {
            for (std::size_t j = i + 1; j < images.size(); ++j) {
              ++pairs;
              for (const Point& x : images[i]) {
                for (const Point& y : images[j]) {
                  if (act->space().distance(x, y) < eps) o.fail(tag + "cross pair closer than eps");
                }
              }
            }
          }
          ++runs;
        }
      }
    }
  }
  if (o.pass) o.detail = std::to_string(runs) + " sequences of 10, " + std::to_string(pairs) + " element pairs";
  return o;
}

InstanceSpec frozen(const char* text) {
  return json_io::to_instance_spec(json_io::instance_from_json(json::parse(text)));
}

Outcome criterion6() {
  Outcome o;
  const InstanceSpec fallback = frozen(R"({
    "space":{"kind":"zd","dim":2,"norm":"l1"},
    "generators":[{"kind":"translation","v":[1,0]},{"kind":"translation","v":[0,1]}],
    "P":[{"point":[-3,0],"eps":"4"},{"point":[0,3],"eps":"3"},{"point":[-1,1],"eps":"2"}],
    "Q":[[-1,1]]})");
  const InstanceSpec restart = frozen(R"({
    "space":{"kind":"zd","dim":2,"norm":"linf"},
    "generators":[{"kind":"translation","v":[1,0]},{"kind":"translation","v":[0,1]}],
    "P":[{"point":[-1,-3],"eps":"4"},{"point":[1,3],"eps":"4"}],
    "Q":[[-2,1],[1,-3],[0,2],[-1,2]]})");
  bool saw_fallback = false, saw_restart = false;
  for (const InstanceSpec* inst : {&fallback, &restart}) {
    const SeparationCertificate c = separate_points(inst->action, inst->P, inst->Q);
    g_restarts.add(c);
    if (c.ratio < ExtRational(kThird)) o.fail("crafted instance below 1/3");
    if (!replay_trace(inst->action, inst->P, inst->Q, c.trace, c.word, OrbitBudget{}).ok) {
      o.fail("crafted trace does not replay");
    }
    for (const TraceLevel& l : c.trace.levels) {
      saw_fallback |= l.outcome == LevelCase::fallback;
      saw_restart |= l.restarts > 0;
    }
  }
  if (!saw_fallback) o.fail("no fallback level exercised");
  if (!saw_restart) o.fail("no restart exercised");
  if (g_restarts.violations > 0) o.fail(std::to_string(g_restarts.violations) + " levels exceed |Q| restarts");
  if (o.pass) {
    o.detail = std::to_string(g_restarts.levels) + " levels within bound; fallback and restart both exercised";
  }
  return o;
}

Outcome criterion7() {
  Outcome o;
  const std::string path = write_temp("c4.json", R"({
    "space":{"kind":"finite_graph","n":4,"edges":[[0,1,"1"],[0,2,"1"],[0,3,"1"],[1,2,"1"],[1,3,"1"],[2,3,"1"]]},
    "generators":[{"kind":"perm","p":[1,2,3,0]}],"P":[0,1,2,3],"Q":[0,1,2,3]})");
  for (const char* cmd : {"separate", "discrete"}) {
    const CliRun r = cli({cmd, "--in", path});
    if (r.code != 2) o.fail(std::string(cmd) + " exited " + std::to_string(r.code));
    const json j = json::parse(r.out);
    if (j.at("status") != "budget-exhausted" || j.contains("word")) o.fail(std::string(cmd) + " emitted a certificate");
  }
  if (o.pass) o.detail = "exit 2, status budget-exhausted, no word";
  return o;
}

Outcome criterion8() {
  Outcome o;
  const MetricSpace scaled = MetricSpace::scaled(Rational(2), MetricSpace::zd(2, kernels::Norm::linf));
  std::size_t n = 0;
  for (const auto& [inst, cert] : g_zd2) {
    if (n == 50) break;
    const GeneratedAction act(scaled, inst.action.generators());
    WeightedPointSet doubled = inst.P;
    for (WeightedPoint& wp : doubled) wp.eps = wp.eps * Rational(2);
    const SeparationCertificate s = evaluate_word(act, doubled, inst.Q, cert.word);
    for (std::size_t i = 0; i < doubled.size(); ++i) {
      if (s.achieved[i].second < ExtRational(doubled[i].eps / Rational(3))) o.fail("scaled bound fails");
      if (s.achieved[i].second != cert.achieved[i].second * Rational(2)) o.fail("scaled distance is not 2x");
    }
    if (s.ratio != cert.ratio) o.fail("ratio changed under scaling");
    ++n;
  }
  if (n != 50) o.fail("fewer than 50 certificates");
  if (o.pass) o.detail = "50/50 words re-verify on the x2 space";
  return o;
}

Outcome criterion9() {
  Outcome o;
  const std::string fb = write_temp("det_fallback.json", R"({
    "space":{"kind":"zd","dim":2,"norm":"l1"},
    "generators":[{"kind":"translation","v":[1,0]},{"kind":"translation","v":[0,1]}],
    "P":[{"point":[-3,0],"eps":"4"},{"point":[0,3],"eps":"3"},{"point":[-1,1],"eps":"2"}],
    "Q":[[-1,1]]})");
  const std::vector<std::vector<std::string>> cmds = {
      {"separate", "--in", fb, "--trace"},
      {"experiment", "--kind", "zd2,zd2l1,free2,shift,compact1", "--n", "8", "--seed", "1234"},
      {"oracle", "--kind", "zd2,free2", "--n", "5", "--seed", "77"},
  };
  const kernels::Backend before = kernels::active_backend();
  for (const auto& c : cmds) {
    const CliRun a = cli(c), b = cli(c);
    kernels::set_backend(kernels::Backend::scalar);
    const CliRun s = cli(c);
    kernels::set_backend(before);
    if (a.out != b.out || a.code != b.code) o.fail(c[0] + " differs between runs");
    if (a.out != s.out) o.fail(c[0] + " differs between SIMD and scalar backends");
    if (a.out.empty()) o.fail(c[0] + " produced no output");
  }
  for (std::uint64_t seed : {0ULL, 99ULL}) {
    if (json_io::to_json(random_instance("free2", seed)).dump() != json_io::to_json(random_instance("free2", seed)).dump()) {
      o.fail("random_instance not reproducible");
    }
  }
  if (o.pass) o.detail = "JSON and CSV byte-identical across runs and backends";
  return o;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::stringstream ss(s);
  while (std::getline(ss, cur, sep)) parts.push_back(cur);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

Outcome criterion10() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const CliRun r = cli({"experiment", "--kind", "zd2,free2,shift,compact1", "--n", "25", "--seed", "2024"});
  const double secs = seconds_since(t0);
  if (r.code != 0) o.fail("exit " + std::to_string(r.code));
  std::vector<std::string> lines = split(r.out, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty() || lines[0] != "kind,seed,p_size,q_size,cert_ratio,oracle_best_ratio,word_len,explored,status") {
    o.fail("bad header");
  }
  if (lines.size() != 101) o.fail(std::to_string(lines.size() - 1) + " rows instead of 100");
  std::optional<ExtRational> min_ratio;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::vector<std::string> f = split(lines[i], ',');
    if (f.size() != 9) {
      o.fail("row " + std::to_string(i) + " has " + std::to_string(f.size()) + " fields");
      continue;
    }
    if (f[8] != "ok") o.fail("row " + std::to_string(i) + " status " + f[8]);
    if (f[4].empty()) continue;
    const ExtRational ratio = ExtRational::parse(f[4]);
    if (!min_ratio || ratio < *min_ratio) min_ratio = ratio;
  }
  if (!min_ratio || *min_ratio < ExtRational(kThird)) o.fail("aggregate min ratio below 1/3");
  if (min_ratio && r.err.find("min_cert_ratio=" + min_ratio->to_string()) == std::string::npos) {
    o.fail("stderr aggregate disagrees with the CSV");
  }
  if (secs >= 60) o.fail("took " + std::to_string(secs) + " s");
  if (o.pass) {
    o.detail = "100 rows, min ratio " + min_ratio->to_string() + ", " + std::to_string(secs).substr(0, 5) + " s";
  }
  return o;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"separation postcondition on 500 Z^2 instances", criterion1},
      {"oracle agreement at L=8", criterion2},
      {"discrete reduction on 200 shift instances", criterion3},
      {"compact chain on 50 instances", criterion4},
      {"separated sequences on Z and F_2", criterion5},
      {"restart bound, fallback and restart exercised", criterion6},
      {"C4 negative control exits 2", criterion7},
      {"equivariance under x2 scaling", criterion8},
      {"determinism", criterion9},
      {"experiment CSV over 100 instances", criterion10},
  };
  int failed = 0;
  int index = 1;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << index++ << ": " << name << " -- " << o.detail
              << '\n';
  }
  return failed == 0 ? 0 : 1;
}
