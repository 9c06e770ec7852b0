#include "isosep/oracle.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <optional>
#include <sstream>
#include <unordered_map>

#include "isosep/rng.hpp"

namespace isosep {

namespace {

const Rational kThird(1, 3);

struct ImageHash {
  std::size_t operator()(const PointSet& s) const noexcept {
    std::size_t h = s.size();
    for (const Point& p : s) h = h * 1000003u ^ std::hash<Point>{}(p);
    return h;
  }
};

// Deliberately naive: no PreparedSet, no kernels.
ExtRational plain_ratio(const MetricSpace& space, const WeightedPointSet& P, const PointSet& image,
                        const PointSet& Q) {
  ExtRational ratio = ExtRational::infinity();
  for (std::size_t i = 0; i < image.size(); ++i) {
    ExtRational d = ExtRational::infinity();
    for (const Point& y : Q) d = std::min(d, ExtRational(space.distance(image[i], y)));
    ratio = std::min(ratio, d / P[i].eps);
  }
  return ratio;
}

PointSet distinct_points(SplitMix64& rng, std::size_t count,
                         const std::function<Point(SplitMix64&)>& draw) {
  PointSet out;
  while (out.size() < count) append_unique(out, draw(rng));
  return out;
}

std::int64_t universe_size(std::string_view kind, const InstanceSizes& s) {
  const std::int64_t side = 2 * s.coord_max + 1;
  if (kind == "zd2" || kind == "zd2l1") return side * side;
  if (kind == "free2") {
    std::int64_t total = 1, layer = 4;
    for (std::size_t k = 1; k <= s.word_len_max; ++k, layer *= 3) total += layer;
    return total;
  }
  return side;
}

}  // namespace

OracleVerdict brute_force_separate(const GeneratedAction& action, const WeightedPointSet& P,
                                   const PointSet& Q, std::size_t max_word_length) {
  validate_weighted(action.space(), P);
  OracleVerdict verdict;
  const MetricSpace& space = action.space();

  struct State {
    PointSet image;
    IsometryWord word;
  };
  std::unordered_map<PointSet, bool, ImageHash> seen;
  std::deque<State> queue;
  PointSet start = points_of(P);
  seen.emplace(start, true);
  queue.push_back({std::move(start), IsometryWord::identity()});

  bool have_best = false;
  while (!queue.empty()) {
    State s = std::move(queue.front());
    queue.pop_front();
    ++verdict.states;

    const ExtRational ratio = plain_ratio(space, P, s.image, Q);
    if (!have_best || ratio > verdict.best_ratio) {
      verdict.best_ratio = ratio;
      verdict.best_word = s.word;
      have_best = true;
    }
    if (ratio >= ExtRational(kThird)) {
      verdict.valid_words.push_back(s.word);
      verdict.valid_images.push_back(s.image);
    }

    if (s.word.length() >= max_word_length) continue;
    for (int g = 1; g <= action.generator_count(); ++g) {
      for (int letter : {g, -g}) {
        PointSet next;
        next.reserve(s.image.size());
        for (const Point& x : s.image) next.push_back(action.apply_letter(letter, x));
        if (!seen.emplace(next, true).second) continue;
        queue.push_back({std::move(next), compose(IsometryWord{letter}, s.word)});
      }
    }
  }
  return verdict;
}

bool oracle_accepts(const OracleVerdict& verdict, const GeneratedAction& action,
                    const WeightedPointSet& P, const IsometryWord& word) {
  const PointSet image = action.apply(word, points_of(P));
  return std::find(verdict.valid_images.begin(), verdict.valid_images.end(), image) !=
         verdict.valid_images.end();
}

void InstanceSizes::validate() const {
  if (p_max > 6) throw InvalidInput("p_max exceeds cap 6");
  if (q_max > 10) throw InvalidInput("q_max exceeds cap 10");
  if (coord_max < 1 || coord_max > 32) throw InvalidInput("coord_max must be in 1..32");
  if (eps_max < 1 || eps_max > 8) throw InvalidInput("eps_max must be in 1..8");
  if (word_len_max > 6) throw InvalidInput("word_len_max exceeds cap 6");
}

const std::vector<std::string>& instance_kinds() {
  static const std::vector<std::string> kinds{"zd2", "zd2l1", "free2", "shift", "compact1", "c4"};
  return kinds;
}

InstanceSpec random_instance(std::string_view kind, std::uint64_t seed, const InstanceSizes& sizes) {
  sizes.validate();
  const auto& kinds = instance_kinds();
  if (std::find(kinds.begin(), kinds.end(), kind) == kinds.end()) {
    throw InvalidInput("unknown instance kind '" + std::string(kind) + "'");
  }
  if (kind != "c4" &&
      universe_size(kind, sizes) < static_cast<std::int64_t>(std::max(sizes.p_max, sizes.q_max))) {
    throw InvalidInput("coordinate range too small for the requested set sizes");
  }

  SplitMix64 rng(seed);
  const std::int64_t c = sizes.coord_max;
  auto count = [&](std::size_t max) -> std::size_t {
    if (max == 0) return 0;
    return static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(max)));
  };

  if (kind == "c4") {
    GeneratedAction action(MetricSpace::complete_graph(4), {Generator::perm({1, 2, 3, 0})});
    InstanceSpec spec{std::string(kind), seed, sizes, std::move(action), {}, {}, {}, {}};
    for (int v = 0; v < 4; ++v) {
      spec.P.push_back({Point::vertex(v), Rational(1)});
      spec.Q.push_back(Point::vertex(v));
    }
    return spec;
  }

  std::function<Point(SplitMix64&)> draw;
  std::optional<GeneratedAction> action;
  if (kind == "zd2" || kind == "zd2l1") {
    action.emplace(MetricSpace::zd(2, kind == "zd2" ? Norm::linf : Norm::l1),
                   std::vector<Generator>{Generator::translation({1, 0}),
                                          Generator::translation({0, 1})});
    draw = [c](SplitMix64& r) { return Point::lattice({r.uniform(-c, c), r.uniform(-c, c)}); };
  } else if (kind == "free2") {
    action.emplace(MetricSpace::free(2),
                   std::vector<Generator>{Generator::leftmul({1}), Generator::leftmul({2})});
    const auto max_len = static_cast<std::int64_t>(sizes.word_len_max);
    draw = [max_len](SplitMix64& r) {
      static const std::int64_t letters[] = {1, -1, 2, -2};
      const std::int64_t len = r.uniform(0, max_len);
      std::vector<std::int64_t> w;
      while (static_cast<std::int64_t>(w.size()) < len) {
        const std::int64_t l = letters[r.below(4)];
        if (!w.empty() && w.back() == -l) continue;
        w.push_back(l);
      }
      return Point::word(std::move(w));
    };
  } else if (kind == "shift") {
    action.emplace(MetricSpace::discrete_shift(), std::vector<Generator>{Generator::shift()});
    draw = [c](SplitMix64& r) { return Point::integer(r.uniform(-c, c)); };
  } else {  // compact1
    action.emplace(MetricSpace::zd(1, Norm::linf), std::vector<Generator>{Generator::translation({1})});
    draw = [c](SplitMix64& r) { return Point::lattice({r.uniform(-c, c)}); };
  }

  InstanceSpec spec{std::string(kind), seed, sizes, std::move(*action), {}, {}, {}, {}};
  if (kind == "compact1") {
    for (const Point& p : distinct_points(rng, count(sizes.p_max), draw)) {
      spec.C.push_back({p, Rational(3 * rng.uniform(1, 3))});
    }
    spec.D = distinct_points(rng, count(sizes.q_max), draw);
    return spec;
  }
  for (const Point& p : distinct_points(rng, count(sizes.p_max), draw)) {
    const std::int64_t eps = kind == "shift" ? 1 : rng.uniform(1, sizes.eps_max);
    spec.P.push_back({p, Rational(eps)});
  }
  spec.Q = distinct_points(rng, count(sizes.q_max), draw);
  return spec;
}

Point sample_point(const MetricSpace& space, SplitMix64& rng) {
  const MetricSpace b = space.base();
  switch (b.kind()) {
    case SpaceKind::zd: {
      std::vector<std::int64_t> v(static_cast<std::size_t>(b.dim()));
      for (auto& c : v) c = rng.uniform(-32, 32);
      return Point::lattice(std::move(v));
    }
    case SpaceKind::free: {
      const std::int64_t rank = b.rank();
      const std::int64_t len = rng.uniform(0, 6);
      std::vector<std::int64_t> w;
      while (static_cast<std::int64_t>(w.size()) < len) {
        std::int64_t l = rng.uniform(1, rank);
        if (rng.below(2) == 1) l = -l;
        if (!w.empty() && w.back() == -l) continue;
        w.push_back(l);
      }
      return Point::word(std::move(w));
    }
    case SpaceKind::discrete_shift: return Point::integer(rng.uniform(-32, 32));
    case SpaceKind::finite_graph: return Point::vertex(rng.uniform(0, b.vertex_count() - 1));
    case SpaceKind::scaled: break;
  }
  throw std::logic_error("sample_point: unreachable space kind");
}

const char* to_string(DifferentialStatus s) {
  switch (s) {
    case DifferentialStatus::agree: return "agree";
    case DifferentialStatus::mismatch: return "mismatch";
    case DifferentialStatus::exhausted: return "budget-exhausted";
  }
  return "?";
}

DifferentialReport audit_certificate(const GeneratedAction& action, const WeightedPointSet& P,
                                     const PointSet& Q, const SeparationCertificate& cert,
                                     const OracleVerdict& verdict, std::size_t oracle_bound,
                                     const OrbitBudget& budget) {
  DifferentialReport report;
  report.certificate = cert;
  report.verdict = verdict;
  report.explored = cert.explored;
  auto mismatch = [&](std::string m) {
    report.status = DifferentialStatus::mismatch;
    report.mismatches.push_back(std::move(m));
  };

  const PointSet image = action.apply(cert.word, points_of(P));
  const ExtRational ratio = plain_ratio(action.space(), P, image, Q);
  if (cert.achieved.size() != P.size()) {
    mismatch("achieved list has " + std::to_string(cert.achieved.size()) + " entries for " +
             std::to_string(P.size()) + " points");
  } else {
    for (std::size_t i = 0; i < P.size(); ++i) {
      ExtRational d = ExtRational::infinity();
      for (const Point& y : Q) d = std::min(d, ExtRational(action.space().distance(image[i], y)));
      if (!(cert.achieved[i].first == P[i].point) || cert.achieved[i].second != d) {
        mismatch("achieved distance for p" + std::to_string(i) + " is " + d.to_string() +
                 ", certificate claims " + cert.achieved[i].second.to_string());
      }
    }
  }
  if (ratio != cert.ratio) {
    mismatch("ratio recomputes to " + ratio.to_string() + ", certificate claims " +
             cert.ratio.to_string());
  }
  if (ratio < ExtRational(kThird)) mismatch("ratio " + ratio.to_string() + " below 1/3");
  if (cert.word.length() <= oracle_bound && !oracle_accepts(verdict, action, P, cert.word)) {
    mismatch("word " + cert.word.to_string() + " not in oracle valid set at bound " +
             std::to_string(oracle_bound));
  }
  if (verdict.best_ratio < ratio && cert.word.length() <= oracle_bound) {
    mismatch("oracle best ratio " + verdict.best_ratio.to_string() + " below certificate ratio");
  }
  const ReplayReport replay = replay_trace(action, P, Q, cert.trace, cert.word, budget);
  if (!replay.ok) mismatch("trace replay: " + replay.mismatch);
  return report;
}

DifferentialReport differential_check(const InstanceSpec& instance, const OrbitBudget& budget,
                                      std::size_t oracle_bound) {
  const SeparationOptions options{budget, ReachMode::lazy};
  WeightedPointSet P = instance.P;
  PointSet Q = instance.Q;
  try {
    SeparationCertificate cert;
    if (instance.is_compact()) {
      CompactSeparationResult r = separate_compact(instance.action, instance.C, instance.D, options);
      P = r.net_P;
      Q = r.net_Q;
      cert = std::move(r.certificate);
    } else {
      cert = separate_points(instance.action, P, Q, options);
    }
    const OracleVerdict verdict = brute_force_separate(instance.action, P, Q, oracle_bound);
    return audit_certificate(instance.action, P, Q, cert, verdict, oracle_bound, budget);
  } catch (const BudgetExhausted& e) {
    DifferentialReport report;
    report.status = DifferentialStatus::exhausted;
    report.explored = e.explored();
    report.mismatches.push_back(e.what());
    report.verdict = brute_force_separate(instance.action, P, Q, oracle_bound);
    return report;
  }
}

std::string ExperimentResult::to_csv() const {
  std::ostringstream os;
  os << "kind,seed,p_size,q_size,cert_ratio,oracle_best_ratio,word_len,explored,status\n";
  for (const ExperimentRow& r : rows) {
    os << r.kind << ',' << r.seed << ',' << r.p_size << ',' << r.q_size << ','
       << (r.cert_ratio ? r.cert_ratio->to_string() : "") << ',' << r.oracle_best_ratio << ','
       << (r.word_len ? std::to_string(*r.word_len) : "") << ',' << r.explored << ','
       << r.status << '\n';
  }
  return os.str();
}

ExperimentResult ratio_experiment(const std::vector<std::string>& kinds, std::size_t n,
                                  std::uint64_t seed, const OrbitBudget& budget,
                                  std::size_t oracle_bound, const InstanceSizes& sizes) {
  if (n == 0) throw InvalidInput("experiment needs at least one instance");
  if (kinds.empty()) throw InvalidInput("experiment needs at least one kind");
  ExperimentResult result;
  for (const std::string& kind : kinds) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t s = seed + i;
      const InstanceSpec inst = random_instance(kind, s, sizes);
      const DifferentialReport rep = differential_check(inst, budget, oracle_bound);

      ExperimentRow row;
      row.kind = kind;
      row.seed = s;
      row.explored = rep.explored;
      row.oracle_best_ratio = rep.verdict.best_ratio;
      row.status = rep.status == DifferentialStatus::agree ? "ok" : to_string(rep.status);
      if (rep.certificate) {
        const SeparationCertificate& cert = *rep.certificate;
        row.cert_ratio = cert.ratio;
        row.word_len = cert.word.length();
        if (!result.min_cert_ratio || cert.ratio < *result.min_cert_ratio) {
          result.min_cert_ratio = cert.ratio;
        }
      }
      row.p_size = inst.is_compact() ? inst.C.size() : inst.P.size();
      row.q_size = inst.is_compact() ? inst.D.size() : inst.Q.size();
      result.rows.push_back(std::move(row));
    }
  }
  return result;
}

}  // namespace isosep
