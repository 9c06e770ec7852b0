#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "isosep/kernels/lattice_distance.hpp"
#include "isosep/point.hpp"
#include "isosep/rational.hpp"

namespace isosep {

using kernels::Norm;

enum class SpaceKind : std::uint8_t { zd, free, discrete_shift, finite_graph, scaled };

const char* to_string(SpaceKind kind);

struct WeightedEdge {
  int u = 0;
  int v = 0;
  Rational weight;
};

/// An exact-rational metric over one of the built-in point universes.
///
/// Values are immutable and cheap to copy (shared implementation). All
/// distances are computed exactly; finite graphs precompute their all-pairs
/// shortest-path table at construction.
class MetricSpace {
 public:
  /// Z^dim with the l1 or l-infinity norm.
  static MetricSpace zd(int dim, Norm norm);
  /// Reduced words of the free group of the given rank, word metric |u^-1 v|.
  static MetricSpace free(int rank);
  /// Z with the discrete 0/1 metric.
  static MetricSpace discrete_shift();
  /// Shortest-path metric of a connected graph with positive rational weights.
  static MetricSpace finite_graph(int n, std::vector<WeightedEdge> edges);
  /// Complete graph with unit weights: the discrete metric on n vertices.
  static MetricSpace complete_graph(int n);
  /// Explicit distance table (row-major n*n). Not checked to be a metric;
  /// see validate_metric.
  static MetricSpace finite_table(int n, std::vector<Rational> table);
  /// c * d(x, y) over the inner space.
  static MetricSpace scaled(Rational factor, const MetricSpace& inner);

  SpaceKind kind() const;

  /// Innermost non-scaled space and the accumulated scale factor.
  MetricSpace base() const;
  Rational scale() const;

  int dim() const;
  Norm norm() const;
  int rank() const;
  int vertex_count() const;
  const std::vector<WeightedEdge>& edges() const;
  bool has_edge_list() const;
  Rational factor() const;
  MetricSpace inner() const;

  /// True when every pair of distinct points is at distance exactly 1.
  bool is_discrete() const;

  bool contains(const Point& p) const;
  /// Throws InvalidInput naming the offending point.
  void require_point(const Point& p) const;

  Rational distance(const Point& p, const Point& q) const;

  std::string describe() const;

 private:
  struct Impl;
  explicit MetricSpace(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

/// Exact distance; throws InvalidInput when either point is foreign to the space.
Rational distance(const MetricSpace& space, const Point& p, const Point& q);

/// Infimum of d(x, y) over x in P, y in Q; +inf when either set is empty.
ExtRational set_distance(const MetricSpace& space, const PointSet& P, const PointSet& Q);

/// d(center, x) < radius. radius must be positive.
bool in_open_ball(const MetricSpace& space, const Point& center, const Rational& radius,
                  const Point& x);

/// Greedy epsilon-net of P: scan in order, keep each point not already
/// inside the open epsilon-ball of a kept point.
PointSet greedy_epsilon_net(const MetricSpace& space, const PointSet& P, const Rational& eps);

struct MetricViolation {
  std::string property;  // "symmetry", "nonnegativity", "identity", "triangle"
  std::vector<Point> points;
  std::string detail;
};

struct MetricReport {
  bool exhaustive = false;
  std::size_t checked = 0;
  std::vector<MetricViolation> violations;

  bool ok() const { return violations.empty(); }
};

using PointTriple = std::array<Point, 3>;

/// Checks the metric axioms on every triple (and the pairs inside them).
/// Finite graphs with at most 64 vertices are checked exhaustively and the
/// sample is ignored. Distinct points at distance 0 are reported as identity
/// violations, so pseudometrics are rejected.
MetricReport validate_metric(const MetricSpace& space, const std::vector<PointTriple>& sample);

/// Distance queries from arbitrary points to one fixed point set.
///
/// Lattice spaces (and scalings of them) go through the batched kernels in
/// kernels/lattice_distance.hpp; everything else is a plain scan. Results are
/// identical either way.
class PreparedSet {
 public:
  PreparedSet(MetricSpace space, PointSet points);

  const PointSet& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool uses_kernel() const { return batch_.has_value(); }

  /// d(x, set); +inf for the empty set.
  ExtRational distance_to(const Point& x) const;

  /// Index of the first point (in set order) with d(x, y) < radius.
  std::optional<std::size_t> first_within(const Point& x, const Rational& radius) const;

 private:
  std::optional<std::vector<std::int32_t>> to_lanes(const Point& x) const;

  MetricSpace space_;
  PointSet points_;
  Rational scale_;
  std::optional<kernels::LatticeBatch> batch_;
};

}  // namespace isosep
