#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "isosep/errors.hpp"
#include "isosep/orbit.hpp"

namespace isosep {

struct WeightedPoint {
  Point point;
  Rational eps;  // > 0: the orbit of `point` is assumed not eps-bounded
};

using WeightedPointSet = std::vector<WeightedPoint>;

/// Throws InvalidInput on non-positive weights, duplicate points, or points
/// foreign to the space.
void validate_weighted(const MetricSpace& space, const WeightedPointSet& P);

PointSet points_of(const WeightedPointSet& P);

/// How the set of "reachable" targets is seeded at each recursion level.
enum class ReachMode : std::uint8_t {
  /// Start empty; a target joins only when a recursive answer lands within
  /// eps/3 of it (its witness is that answer). Keeps the enlarged target sets
  /// small.
  lazy,
  /// Additionally pre-scan the pivot's orbit (within budget) for points
  /// within eps/3 of each target before recursing.
  eager,
};

enum class LevelCase : std::uint8_t {
  direct,    // g = h . a
  fallback,  // g = a . g_y^-1 . h . a
};

const char* to_string(LevelCase c);

struct ReachWitness {
  Point target;          // y in Q
  IsometryWord witness;  // g_y with d(g_y p, y) < eps_p / 3
};

/// One level of the recursion along the branch that produced the answer.
struct TraceLevel {
  Point pivot;
  Rational pivot_eps;
  IsometryWord escape;               // a: d(a p, Q) >= eps_p
  std::vector<ReachWitness> reach;   // targets known to be within eps_p/3 of the orbit
  PointSet enlarged;                 // Q' = Q U g_y a^-1 Q over the reach set
  std::size_t target_count = 0;      // |Q| at this level
  std::size_t restarts = 0;
  LevelCase outcome = LevelCase::direct;
  std::optional<Point> fallback_target;  // y used by the fallback case
  IsometryWord inner;                // h, answer of the next level
  IsometryWord result;               // g for this level
};

struct RecursionTrace {
  std::vector<TraceLevel> levels;  // outermost first
};

struct SeparationCertificate {
  IsometryWord word;
  std::vector<std::pair<Point, ExtRational>> achieved;  // d(g p, Q) per p, input order
  ExtRational ratio = ExtRational::infinity();          // min achieved(p) / eps_p
  RecursionTrace trace;
  std::size_t explored = 0;  // orbit points visited by all escape/reach searches
};

struct SeparationOptions {
  OrbitBudget budget{};
  ReachMode reach = ReachMode::lazy;
};

/// Escape search failed somewhere inside the recursion.
class SeparationExhausted : public BudgetExhausted {
 public:
  SeparationExhausted(const BudgetExhausted& cause, RecursionTrace partial)
      : BudgetExhausted(cause.what(), cause.explored()), partial_(std::move(partial)) {}

  /// Levels entered (outermost first) when the search gave up.
  const RecursionTrace& partial() const { return partial_; }

 private:
  RecursionTrace partial_;
};

/// Finds g with d(g p, Q) >= eps_p / 3 for every weighted point p.
///
/// Induction on |P|: pick the pivot p with the largest weight (earliest on
/// ties), escape it to a p with d(a p, Q) >= eps_p, recurse on a(P \ {p})
/// against the enlarged set Q', then either return h a directly or, when
/// h a p lands within eps_p / 3 of a reachable target y, return
/// a g_y^-1 h a. A target found too close that was not yet known reachable
/// becomes reachable (witness h a) and the level restarts; this happens at
/// most |Q| times per level.
SeparationCertificate separate_points(const GeneratedAction& action, const WeightedPointSet& P,
                                      const PointSet& Q, const SeparationOptions& options = {});

/// Recomputes d(word p, Q) for every p and the ratio; no search.
SeparationCertificate evaluate_word(const GeneratedAction& action, const WeightedPointSet& P,
                                    const PointSet& Q, const IsometryWord& word);

struct ReplayReport {
  bool ok = true;
  std::string mismatch;
  IsometryWord word;
};

/// Re-derives every level from the recorded choices: the pivot rule, the
/// escape word (re-searched), the enlarged set from the recorded witnesses,
/// the witnesses' defining inequality, the restart bound, and finally the
/// answer word bottom-up. ok iff everything matches the trace and `expected`.
ReplayReport replay_trace(const GeneratedAction& action, const WeightedPointSet& P,
                          const PointSet& Q, const RecursionTrace& trace,
                          const IsometryWord& expected, const OrbitBudget& budget);

/// Discrete version: every weight is 1, so success means (g P) and Q are disjoint.
/// Requires a space with the 0/1 metric.
SeparationCertificate separate_discrete(const GeneratedAction& action, const PointSet& P,
                                        const PointSet& Q, const SeparationOptions& options = {});

struct CompactSeparationResult {
  Rational epsilon;
  WeightedPointSet cover;   // A with delta_a
  WeightedPointSet net_P;   // eps-net of C, weights 9 eps
  PointSet net_Q;           // eps-net of D
  SeparationCertificate certificate;
  ExtRational final_distance = ExtRational::infinity();  // d(g C, D)
};

/// Separates a finite set C (each point weighted by delta_a, its orbit not
/// delta_a-bounded) from a finite D by at least
/// epsilon = min over the cover of delta_a / 18.
CompactSeparationResult separate_compact(const GeneratedAction& action, const WeightedPointSet& C,
                                         const PointSet& D, const SeparationOptions& options = {});

/// n words w_1 = id, w_2, ... with every coordinate of w_i(tuple) at distance
/// >= eps from every coordinate of w_j(tuple) for i != j. Each step separates
/// the tuple (weights 3 eps; 1 on a 0/1 metric with eps <= 1) from every
/// point placed so far.
std::vector<IsometryWord> separated_sequence(const GeneratedAction& action, const PointSet& tuple,
                                             const Rational& eps, std::size_t n,
                                             const SeparationOptions& options = {});

struct FullExistenceResult {
  IsometryWord sigma;
  PointSet realization;  // sigma^-1 (anchors)
  SeparationCertificate certificate;
};

/// Moves the obstacles off the anchors (weights eps_b) and transports the
/// anchors back: d(b, r) >= eps_b / 3 for every obstacle b and realization r.
FullExistenceResult full_existence_step(const GeneratedAction& action, const PointSet& anchors,
                                        const WeightedPointSet& obstacles,
                                        const SeparationOptions& options = {});

}  // namespace isosep
