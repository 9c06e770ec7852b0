#include "isosep/separation.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace isosep {

namespace {

const Rational kThird(1, 3);

std::size_t pick_pivot(const WeightedPointSet& P) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < P.size(); ++i) {
    if (P[i].eps > P[best].eps) best = i;
  }
  return best;
}

PointSet enlarge(const GeneratedAction& action, const PointSet& Q,
                 const std::vector<ReachWitness>& reach, const IsometryWord& escape_inverse) {
  PointSet out = Q;
  std::unordered_set<Point> seen(Q.begin(), Q.end());
  for (const ReachWitness& r : reach) {
    const IsometryWord move = compose(r.witness, escape_inverse);
    for (const Point& y : Q) {
      Point image = action.apply(move, y);
      if (seen.insert(image).second) out.push_back(std::move(image));
    }
  }
  return out;
}

const ReachWitness* find_reach(const std::vector<ReachWitness>& reach, const Point& y) {
  for (const ReachWitness& r : reach) {
    if (r.target == y) return &r;
  }
  return nullptr;
}

class Solver {
 public:
  Solver(const GeneratedAction& action, const SeparationOptions& options)
      : action_(action), options_(options) {}

  std::size_t explored() const { return explored_; }

  std::pair<IsometryWord, std::vector<TraceLevel>> solve(const WeightedPointSet& P,
                                                         const PointSet& Q) {
    if (P.empty()) return {IsometryWord::identity(), {}};

    const std::size_t pivot = pick_pivot(P);
    const Point& p = P[pivot].point;
    const Rational eps = P[pivot].eps;
    const Rational third = eps * kThird;

    TraceLevel level;
    level.pivot = p;
    level.pivot_eps = eps;
    level.target_count = Q.size();

    try {
      level.escape = find_escape(action_, p, Q, eps, options_.budget, &explored_);
    } catch (const BudgetExhausted& e) {
      RecursionTrace partial{path_};
      partial.levels.push_back(level);
      throw SeparationExhausted(e, std::move(partial));
    }
    const IsometryWord& a = level.escape;
    const IsometryWord a_inv = invert(a);

    if (options_.reach == ReachMode::eager) level.reach = scan_reach(p, Q, third);

    WeightedPointSet moved;
    moved.reserve(P.size() - 1);
    for (std::size_t i = 0; i < P.size(); ++i) {
      if (i != pivot) moved.push_back({action_.apply(a, P[i].point), P[i].eps});
    }

    const PreparedSet targets(action_.space(), Q);
    for (;;) {
      level.enlarged = enlarge(action_, Q, level.reach, a_inv);

      path_.push_back(level);
      auto [h, below] = solve(moved, level.enlarged);
      path_.pop_back();

      const IsometryWord ha = compose(h, a);
      const Point hap = action_.apply(ha, p);

      std::optional<Point> first_close;
      const ReachWitness* known = nullptr;
      for (const Point& y : Q) {
        if (action_.space().distance(hap, y) >= third) continue;
        if (!first_close) first_close = y;
        if ((known = find_reach(level.reach, y)) != nullptr) break;
      }

      level.inner = h;
      if (!first_close) {
        level.outcome = LevelCase::direct;
        level.result = ha;
      } else if (known != nullptr) {
        level.outcome = LevelCase::fallback;
        level.fallback_target = known->target;
        level.result = compose(a, compose(invert(known->witness), ha));
      } else {
        // h a p is itself an orbit point within eps/3 of y: y is reachable
        level.reach.push_back({*first_close, ha});
        if (++level.restarts > Q.size()) {
          throw std::logic_error("restart bound exceeded at pivot " + p.to_string());
        }
        continue;
      }

      for (const WeightedPoint& x : P) {
        if (targets.distance_to(action_.apply(level.result, x.point)) < x.eps * kThird) {
          throw std::logic_error("separation postcondition failed at pivot " + p.to_string());
        }
      }
      std::vector<TraceLevel> levels;
      levels.reserve(below.size() + 1);
      levels.push_back(std::move(level));
      std::move(below.begin(), below.end(), std::back_inserter(levels));
      return {levels.front().result, std::move(levels)};
    }
  }

 private:
  std::vector<ReachWitness> scan_reach(const Point& p, const PointSet& Q, const Rational& third) {
    std::vector<std::optional<IsometryWord>> found(Q.size());
    std::size_t missing = Q.size();
    OrbitExplorer explorer(action_, p, options_.budget);
    while (missing > 0) {
      auto e = explorer.next();
      if (!e) break;
      for (std::size_t i = 0; i < Q.size(); ++i) {
        if (!found[i] && action_.space().distance(e->point, Q[i]) < third) {
          found[i] = e->word;
          --missing;
        }
      }
    }
    explored_ += explorer.explored();
    std::vector<ReachWitness> reach;
    for (std::size_t i = 0; i < Q.size(); ++i) {
      if (found[i]) reach.push_back({Q[i], *found[i]});
    }
    return reach;
  }

  const GeneratedAction& action_;
  const SeparationOptions& options_;
  std::size_t explored_ = 0;
  std::vector<TraceLevel> path_;
};

}  // namespace

const char* to_string(LevelCase c) { return c == LevelCase::direct ? "direct" : "fallback"; }

void validate_weighted(const MetricSpace& space, const WeightedPointSet& P) {
  std::unordered_set<Point> seen;
  for (const WeightedPoint& wp : P) {
    space.require_point(wp.point);
    if (wp.eps.sign() <= 0) {
      throw InvalidInput("weight of " + wp.point.to_string() + " must be positive");
    }
    if (!seen.insert(wp.point).second) {
      throw InvalidInput("duplicate weighted point " + wp.point.to_string());
    }
  }
}

PointSet points_of(const WeightedPointSet& P) {
  PointSet out;
  out.reserve(P.size());
  for (const WeightedPoint& wp : P) out.push_back(wp.point);
  return out;
}

SeparationCertificate evaluate_word(const GeneratedAction& action, const WeightedPointSet& P,
                                    const PointSet& Q, const IsometryWord& word) {
  SeparationCertificate cert;
  cert.word = word;
  const PreparedSet targets(action.space(), Q);
  for (const WeightedPoint& wp : P) {
    ExtRational d = targets.distance_to(action.apply(word, wp.point));
    cert.ratio = std::min(cert.ratio, d / wp.eps);
    cert.achieved.emplace_back(wp.point, d);
  }
  return cert;
}

SeparationCertificate separate_points(const GeneratedAction& action, const WeightedPointSet& P,
                                      const PointSet& Q, const SeparationOptions& options) {
  options.budget.validate();
  validate_weighted(action.space(), P);
  require_distinct(Q, "target set");
  for (const Point& y : Q) action.space().require_point(y);

  Solver solver(action, options);
  auto [word, levels] = solver.solve(P, Q);
  SeparationCertificate cert = evaluate_word(action, P, Q, word);
  if (cert.ratio < ExtRational(kThird)) {
    throw std::logic_error("certificate ratio " + cert.ratio.to_string() + " below 1/3");
  }
  cert.trace.levels = std::move(levels);
  cert.explored = solver.explored();
  return cert;
}

ReplayReport replay_trace(const GeneratedAction& action, const WeightedPointSet& P,
                          const PointSet& Q, const RecursionTrace& trace,
                          const IsometryWord& expected, const OrbitBudget& budget) {
  ReplayReport report;
  auto fail = [&](std::size_t k, const std::string& what) {
    report.ok = false;
    report.mismatch = "level " + std::to_string(k) + ": " + what;
    return report;
  };
  if (trace.levels.size() != P.size()) {
    return fail(0, "trace has " + std::to_string(trace.levels.size()) + " levels for " +
                       std::to_string(P.size()) + " points");
  }

  WeightedPointSet cur_P = P;
  PointSet cur_Q = Q;
  for (std::size_t k = 0; k < trace.levels.size(); ++k) {
    const TraceLevel& level = trace.levels[k];
    const std::size_t pivot = pick_pivot(cur_P);
    if (!(cur_P[pivot].point == level.pivot) || cur_P[pivot].eps != level.pivot_eps) {
      return fail(k, "pivot differs");
    }
    if (level.target_count != cur_Q.size()) return fail(k, "target count differs");
    if (level.restarts > cur_Q.size()) return fail(k, "restart bound exceeded");
    IsometryWord a;
    try {
      a = find_escape(action, level.pivot, cur_Q, level.pivot_eps, budget);
    } catch (const BudgetExhausted&) {
      return fail(k, "escape not reproducible within budget");
    }
    if (!(a == level.escape)) return fail(k, "escape word differs");
    const Rational third = level.pivot_eps * kThird;
    for (const ReachWitness& r : level.reach) {
      if (std::find(cur_Q.begin(), cur_Q.end(), r.target) == cur_Q.end()) {
        return fail(k, "reach target not in level targets");
      }
      if (action.space().distance(action.apply(r.witness, level.pivot), r.target) >= third) {
        return fail(k, "reach witness too far from " + r.target.to_string());
      }
    }
    if (enlarge(action, cur_Q, level.reach, invert(a)) != level.enlarged) {
      return fail(k, "enlarged target set differs");
    }
    WeightedPointSet next;
    for (std::size_t i = 0; i < cur_P.size(); ++i) {
      if (i != pivot) next.push_back({action.apply(a, cur_P[i].point), cur_P[i].eps});
    }
    cur_P = std::move(next);
    cur_Q = level.enlarged;
  }

  IsometryWord h = IsometryWord::identity();
  for (std::size_t k = trace.levels.size(); k-- > 0;) {
    const TraceLevel& level = trace.levels[k];
    if (!(level.inner == h)) return fail(k, "inner word differs from next level's answer");
    const IsometryWord ha = compose(h, level.escape);
    IsometryWord g;
    if (level.outcome == LevelCase::direct) {
      g = ha;
    } else {
      if (!level.fallback_target) return fail(k, "fallback without target");
      const ReachWitness* r = find_reach(level.reach, *level.fallback_target);
      if (r == nullptr) return fail(k, "fallback target not reachable");
      if (action.space().distance(action.apply(ha, level.pivot), r->target) >=
          level.pivot_eps * kThird) {
        return fail(k, "fallback target not within eps/3 of h a p");
      }
      g = compose(level.escape, compose(invert(r->witness), ha));
    }
    if (!(g == level.result)) return fail(k, "level answer differs");
    h = g;
  }
  report.word = h;
  if (!(h == expected)) return fail(0, "replayed word differs from certificate");
  return report;
}

SeparationCertificate separate_discrete(const GeneratedAction& action, const PointSet& P,
                                        const PointSet& Q, const SeparationOptions& options) {
  if (!action.space().is_discrete()) {
    throw InvalidInput("discrete separation needs a 0/1 metric, got " + action.space().describe());
  }
  WeightedPointSet weighted;
  weighted.reserve(P.size());
  for (const Point& p : P) weighted.push_back({p, Rational(1)});
  return separate_points(action, weighted, Q, options);
}

CompactSeparationResult separate_compact(const GeneratedAction& action, const WeightedPointSet& C,
                                         const PointSet& D, const SeparationOptions& options) {
  if (C.empty()) throw InvalidInput("compact set must be nonempty");
  validate_weighted(action.space(), C);
  require_distinct(D, "far set");
  const MetricSpace& space = action.space();

  CompactSeparationResult result;
  const Rational half(1, 2);
  for (const WeightedPoint& c : C) {
    const bool covered = std::any_of(result.cover.begin(), result.cover.end(), [&](const auto& a) {
      return space.distance(c.point, a.point) < a.eps * half;
    });
    if (!covered) result.cover.push_back(c);
  }
  Rational min_delta = result.cover.front().eps;
  for (const WeightedPoint& a : result.cover) min_delta = std::min(min_delta, a.eps);
  result.epsilon = min_delta / Rational(18);

  const Rational nine_eps = result.epsilon * Rational(9);
  for (const Point& p : greedy_epsilon_net(space, points_of(C), result.epsilon)) {
    result.net_P.push_back({p, nine_eps});
  }
  result.net_Q = greedy_epsilon_net(space, D, result.epsilon);
  result.certificate = separate_points(action, result.net_P, result.net_Q, options);

  result.final_distance =
      set_distance(space, action.apply(result.certificate.word, points_of(C)), D);
  if (result.final_distance < ExtRational(result.epsilon)) {
    throw std::logic_error("compact separation fell below epsilon");
  }
  return result;
}

std::vector<IsometryWord> separated_sequence(const GeneratedAction& action, const PointSet& tuple,
                                             const Rational& eps, std::size_t n,
                                             const SeparationOptions& options) {
  if (eps.sign() <= 0) throw InvalidInput("sequence separation must be positive");
  if (n == 0) throw InvalidInput("sequence length must be >= 1");
  PointSet distinct;
  for (const Point& t : tuple) {
    action.space().require_point(t);
    append_unique(distinct, t);
  }
  // 0/1 metric with eps <= 1: unit weights suffice
  const bool unit = action.space().is_discrete() && eps <= Rational(1);
  WeightedPointSet weighted;
  for (const Point& t : distinct) weighted.push_back({t, unit ? Rational(1) : eps * Rational(3)});

  std::vector<IsometryWord> words{IsometryWord::identity()};
  PointSet placed = distinct;
  while (words.size() < n) {
    SeparationCertificate cert = separate_points(action, weighted, placed, options);
    for (const Point& t : distinct) append_unique(placed, action.apply(cert.word, t));
    words.push_back(std::move(cert.word));
  }
  return words;
}

FullExistenceResult full_existence_step(const GeneratedAction& action, const PointSet& anchors,
                                        const WeightedPointSet& obstacles,
                                        const SeparationOptions& options) {
  FullExistenceResult result;
  result.certificate = separate_points(action, obstacles, anchors, options);
  result.sigma = result.certificate.word;
  result.realization = action.apply(invert(result.sigma), anchors);
  return result;
}

}  // namespace isosep
