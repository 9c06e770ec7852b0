#pragma once

#include <cstddef>
#include <optional>
#include <unordered_set>
#include <vector>

#include "isosep/action.hpp"

namespace isosep {

/// Finite stand-in for quantifiers over a whole orbit.
struct OrbitBudget {
  std::size_t max_points = 100000;
  std::size_t max_word_length = 24;

  /// Throws InvalidInput unless both limits are positive.
  void validate() const;
};

struct OrbitEntry {
  Point point;
  IsometryWord word;  // first word (in BFS order) reaching the point
};

/// Lazy breadth-first enumeration of an orbit.
///
/// Points come out by non-decreasing word length. A point is expanded by
/// trying, for each generator in list order, the generator and then its
/// inverse; the first word reaching each point is kept and later duplicates
/// are dropped. The stream ends when max_points distinct points have been
/// produced, when no word of length <= max_word_length reaches a new point,
/// or when the orbit is finite and fully enumerated.
class OrbitExplorer {
 public:
  OrbitExplorer(const GeneratedAction& action, Point start, OrbitBudget budget);

  std::optional<OrbitEntry> next();

  /// Distinct points produced so far.
  std::size_t explored() const { return produced_; }

 private:
  struct Node {
    Point point;
    IsometryWord word;
  };

  const GeneratedAction* action_;
  OrbitBudget budget_;
  std::vector<Node> nodes_;  // discovery order
  std::unordered_set<Point> seen_;
  std::size_t produced_ = 0;
  std::size_t expand_ = 0;  // node being expanded
  int slot_ = 0;            // next letter slot: 2*g (forward), 2*g+1 (inverse)
};

/// Convenience: drain the stream into a vector.
std::vector<OrbitEntry> orbit_points(const GeneratedAction& action, const Point& p,
                                     const OrbitBudget& budget);

/// First word a (orbit stream order) with d(a p, y) >= eps for every y in Q.
/// Throws BudgetExhausted carrying the number of points explored.
IsometryWord find_escape(const GeneratedAction& action, const Point& p, const PointSet& Q,
                         const Rational& eps, const OrbitBudget& budget,
                         std::size_t* explored = nullptr);

/// n orbit points pairwise at distance >= 2 eps, chosen greedily along the
/// orbit stream. Each open eps-ball holds at most one of them, so no eps-net
/// of the orbit has fewer than n points.
std::vector<OrbitEntry> separated_family(const GeneratedAction& action, const Point& p,
                                         const Rational& eps, std::size_t n,
                                         const OrbitBudget& budget);

}  // namespace isosep
