#include "isosep/metric_space.hpp"

#include <algorithm>
#include <variant>

#include "isosep/errors.hpp"

namespace isosep {

namespace {

struct ZdData {
  int dim;
  Norm norm;
};
struct FreeData {
  int rank;
};
struct ShiftData {};
struct GraphData {
  int n;
  std::vector<WeightedEdge> edges;
  bool has_edges;
  std::vector<Rational> table;  // n*n, row-major
};
struct ScaledData {
  Rational factor;
  MetricSpace inner;
};

std::int64_t word_distance(const std::vector<std::int64_t>& u, const std::vector<std::int64_t>& v) {
  std::size_t common = 0;
  while (common < u.size() && common < v.size() && u[common] == v[common]) ++common;
  return static_cast<std::int64_t>(u.size() + v.size() - 2 * common);
}

}  // namespace

struct MetricSpace::Impl {
  std::variant<ZdData, FreeData, ShiftData, GraphData, ScaledData> data;
};

const char* to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::zd: return "zd";
    case SpaceKind::free: return "free";
    case SpaceKind::discrete_shift: return "discrete_shift";
    case SpaceKind::finite_graph: return "finite_graph";
    case SpaceKind::scaled: return "scaled";
  }
  return "?";
}

MetricSpace MetricSpace::zd(int dim, Norm norm) {
  if (dim < 1) throw InvalidInput("zd dimension must be >= 1");
  return MetricSpace(std::make_shared<const Impl>(Impl{ZdData{dim, norm}}));
}

MetricSpace MetricSpace::free(int rank) {
  if (rank < 1) throw InvalidInput("free group rank must be >= 1");
  if (rank > 26) throw InvalidInput("free group rank must be <= 26");
  return MetricSpace(std::make_shared<const Impl>(Impl{FreeData{rank}}));
}

MetricSpace MetricSpace::discrete_shift() {
  return MetricSpace(std::make_shared<const Impl>(Impl{ShiftData{}}));
}

MetricSpace MetricSpace::finite_graph(int n, std::vector<WeightedEdge> edges) {
  if (n < 1) throw InvalidInput("finite_graph needs at least one vertex");
  const auto un = static_cast<std::size_t>(n);
  std::vector<std::optional<Rational>> dist(un * un);
  for (std::size_t i = 0; i < un; ++i) dist[i * un + i] = Rational(0);
  for (const WeightedEdge& e : edges) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n) {
      throw InvalidInput("finite_graph edge endpoint out of range");
    }
    if (e.weight.sign() <= 0) throw InvalidInput("finite_graph edge weights must be positive");
    if (e.u == e.v) continue;
    auto& uv = dist[static_cast<std::size_t>(e.u) * un + static_cast<std::size_t>(e.v)];
    auto& vu = dist[static_cast<std::size_t>(e.v) * un + static_cast<std::size_t>(e.u)];
    if (!uv || e.weight < *uv) uv = vu = e.weight;
  }
  // Floyd-Warshall
  for (std::size_t k = 0; k < un; ++k) {
    for (std::size_t i = 0; i < un; ++i) {
      if (!dist[i * un + k]) continue;
      for (std::size_t j = 0; j < un; ++j) {
        if (!dist[k * un + j]) continue;
        Rational via = *dist[i * un + k] + *dist[k * un + j];
        auto& ij = dist[i * un + j];
        if (!ij || via < *ij) ij = via;
      }
    }
  }
  std::vector<Rational> table(un * un);
  for (std::size_t i = 0; i < un * un; ++i) {
    if (!dist[i]) throw InvalidInput("finite_graph must be connected");
    table[i] = *dist[i];
  }
  return MetricSpace(std::make_shared<const Impl>(
      Impl{GraphData{n, std::move(edges), true, std::move(table)}}));
}

MetricSpace MetricSpace::complete_graph(int n) {
  std::vector<WeightedEdge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) edges.push_back({u, v, Rational(1)});
  }
  return finite_graph(n, std::move(edges));
}

MetricSpace MetricSpace::finite_table(int n, std::vector<Rational> table) {
  if (n < 1) throw InvalidInput("finite_table needs at least one vertex");
  if (table.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
    throw InvalidInput("finite_table size must be n*n");
  }
  return MetricSpace(
      std::make_shared<const Impl>(Impl{GraphData{n, {}, false, std::move(table)}}));
}

MetricSpace MetricSpace::scaled(Rational factor, const MetricSpace& inner) {
  if (factor.sign() <= 0) throw InvalidInput("scale factor must be positive");
  return MetricSpace(std::make_shared<const Impl>(Impl{ScaledData{factor, inner}}));
}

SpaceKind MetricSpace::kind() const {
  return static_cast<SpaceKind>(impl_->data.index());
}

MetricSpace MetricSpace::base() const {
  MetricSpace s = *this;
  while (s.kind() == SpaceKind::scaled) s = s.inner();
  return s;
}

Rational MetricSpace::scale() const {
  Rational c(1);
  MetricSpace s = *this;
  while (s.kind() == SpaceKind::scaled) {
    c *= s.factor();
    s = s.inner();
  }
  return c;
}

int MetricSpace::dim() const {
  const auto* z = std::get_if<ZdData>(&base().impl_->data);
  if (!z) throw InvalidInput("dim() on a non-lattice space");
  return z->dim;
}

Norm MetricSpace::norm() const {
  const auto* z = std::get_if<ZdData>(&base().impl_->data);
  if (!z) throw InvalidInput("norm() on a non-lattice space");
  return z->norm;
}

int MetricSpace::rank() const {
  const auto* f = std::get_if<FreeData>(&base().impl_->data);
  if (!f) throw InvalidInput("rank() on a non-free space");
  return f->rank;
}

int MetricSpace::vertex_count() const {
  const auto* g = std::get_if<GraphData>(&base().impl_->data);
  if (!g) throw InvalidInput("vertex_count() on a non-graph space");
  return g->n;
}

const std::vector<WeightedEdge>& MetricSpace::edges() const {
  const auto* g = std::get_if<GraphData>(&impl_->data);
  if (!g) throw InvalidInput("edges() on a non-graph space");
  return g->edges;
}

bool MetricSpace::has_edge_list() const {
  const auto* g = std::get_if<GraphData>(&impl_->data);
  return g && g->has_edges;
}

Rational MetricSpace::factor() const {
  const auto* s = std::get_if<ScaledData>(&impl_->data);
  if (!s) throw InvalidInput("factor() on a non-scaled space");
  return s->factor;
}

MetricSpace MetricSpace::inner() const {
  const auto* s = std::get_if<ScaledData>(&impl_->data);
  if (!s) throw InvalidInput("inner() on a non-scaled space");
  return s->inner;
}

bool MetricSpace::is_discrete() const {
  if (scale() != Rational(1)) return false;
  const MetricSpace b = base();
  if (b.kind() == SpaceKind::discrete_shift) return true;
  const auto* g = std::get_if<GraphData>(&b.impl_->data);
  if (!g) return false;
  const auto n = static_cast<std::size_t>(g->n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && g->table[i * n + j] != Rational(1)) return false;
    }
  }
  return true;
}

bool MetricSpace::contains(const Point& p) const {
  const MetricSpace b = base();
  return std::visit(
      [&](const auto& d) -> bool {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, ZdData>) {
          return p.kind == PointKind::lattice && static_cast<int>(p.coords.size()) == d.dim;
        } else if constexpr (std::is_same_v<T, FreeData>) {
          if (p.kind != PointKind::word) return false;
          for (std::size_t i = 0; i < p.coords.size(); ++i) {
            std::int64_t l = p.coords[i];
            if (l == 0 || l > d.rank || l < -d.rank) return false;
            if (i > 0 && p.coords[i - 1] == -l) return false;
          }
          return true;
        } else if constexpr (std::is_same_v<T, ShiftData>) {
          return p.kind == PointKind::integer && p.coords.size() == 1;
        } else if constexpr (std::is_same_v<T, GraphData>) {
          return p.kind == PointKind::vertex && p.coords.size() == 1 && p.coords[0] >= 0 &&
                 p.coords[0] < d.n;
        } else {
          return false;
        }
      },
      b.impl_->data);
}

void MetricSpace::require_point(const Point& p) const {
  if (!contains(p)) {
    throw InvalidInput("point " + p.to_string() + " (" + to_string(p.kind) +
                       ") does not belong to space " + describe());
  }
}

Rational MetricSpace::distance(const Point& p, const Point& q) const {
  require_point(p);
  require_point(q);
  return std::visit(
      [&](const auto& d) -> Rational {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, ZdData>) {
          std::int64_t acc = 0;
          for (int k = 0; k < d.dim; ++k) {
            std::int64_t diff = p.coords[k] - q.coords[k];
            if (diff < 0) diff = -diff;
            acc = d.norm == Norm::l1 ? acc + diff : std::max(acc, diff);
          }
          return Rational(acc);
        } else if constexpr (std::is_same_v<T, FreeData>) {
          return Rational(word_distance(p.coords, q.coords));
        } else if constexpr (std::is_same_v<T, ShiftData>) {
          return Rational(p.coords[0] == q.coords[0] ? 0 : 1);
        } else if constexpr (std::is_same_v<T, GraphData>) {
          return d.table[static_cast<std::size_t>(p.coords[0]) * static_cast<std::size_t>(d.n) +
                         static_cast<std::size_t>(q.coords[0])];
        } else {
          return d.factor * d.inner.distance(p, q);
        }
      },
      impl_->data);
}

std::string MetricSpace::describe() const {
  return std::visit(
      [](const auto& d) -> std::string {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, ZdData>) {
          return "zd(" + std::to_string(d.dim) + (d.norm == Norm::l1 ? ",l1)" : ",linf)");
        } else if constexpr (std::is_same_v<T, FreeData>) {
          return "free(" + std::to_string(d.rank) + ")";
        } else if constexpr (std::is_same_v<T, ShiftData>) {
          return "discrete_shift";
        } else if constexpr (std::is_same_v<T, GraphData>) {
          return "finite_graph(" + std::to_string(d.n) + ")";
        } else {
          return "scaled(" + d.factor.to_string() + "," + d.inner.describe() + ")";
        }
      },
      impl_->data);
}

Rational distance(const MetricSpace& space, const Point& p, const Point& q) {
  return space.distance(p, q);
}

ExtRational set_distance(const MetricSpace& space, const PointSet& P, const PointSet& Q) {
  ExtRational best = ExtRational::infinity();
  if (P.empty() || Q.empty()) return best;
  PreparedSet prepared(space, Q);
  for (const Point& x : P) best = std::min(best, prepared.distance_to(x));
  return best;
}

bool in_open_ball(const MetricSpace& space, const Point& center, const Rational& radius,
                  const Point& x) {
  if (radius.sign() <= 0) throw InvalidInput("open ball radius must be positive");
  return space.distance(center, x) < radius;
}

PointSet greedy_epsilon_net(const MetricSpace& space, const PointSet& P, const Rational& eps) {
  if (eps.sign() <= 0) throw InvalidInput("net radius must be positive");
  PointSet net;
  for (const Point& p : P) {
    space.require_point(p);
    bool covered = std::any_of(net.begin(), net.end(),
                               [&](const Point& n) { return space.distance(n, p) < eps; });
    if (!covered) net.push_back(p);
  }
  return net;
}

namespace {

void check_triple(const MetricSpace& space, const Point& x, const Point& y, const Point& z,
                  MetricReport& report) {
  const Rational dxy = space.distance(x, y);
  const Rational dyx = space.distance(y, x);
  const Rational dyz = space.distance(y, z);
  const Rational dxz = space.distance(x, z);
  const Rational dxx = space.distance(x, x);
  ++report.checked;
  if (dxy != dyx) {
    report.violations.push_back({"symmetry", {x, y},
                                 "d(x,y)=" + dxy.to_string() + " d(y,x)=" + dyx.to_string()});
  }
  if (dxy.sign() < 0) {
    report.violations.push_back({"nonnegativity", {x, y}, "d(x,y)=" + dxy.to_string()});
  }
  if (dxx.sign() != 0) {
    report.violations.push_back({"identity", {x}, "d(x,x)=" + dxx.to_string()});
  }
  if (!(x == y) && dxy.sign() == 0) {
    report.violations.push_back({"identity", {x, y}, "distinct points at distance 0"});
  }
  if (dxz > dxy + dyz) {
    report.violations.push_back({"triangle", {x, y, z},
                                 "d(x,z)=" + dxz.to_string() + " > d(x,y)+d(y,z)=" +
                                     (dxy + dyz).to_string()});
  }
}

}  // namespace

MetricReport validate_metric(const MetricSpace& space, const std::vector<PointTriple>& sample) {
  MetricReport report;
  const MetricSpace b = space.base();
  if (b.kind() == SpaceKind::finite_graph && b.vertex_count() <= 64) {
    report.exhaustive = true;
    const int n = b.vertex_count();
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
          check_triple(space, Point::vertex(i), Point::vertex(j), Point::vertex(k), report);
        }
      }
    }
    return report;
  }
  for (const PointTriple& t : sample) check_triple(space, t[0], t[1], t[2], report);
  return report;
}

PreparedSet::PreparedSet(MetricSpace space, PointSet points)
    : space_(std::move(space)), points_(std::move(points)), scale_(space_.scale()) {
  for (const Point& p : points_) space_.require_point(p);
  const MetricSpace b = space_.base();
  if (b.kind() != SpaceKind::zd || points_.empty()) return;
  kernels::LatticeBatch batch(b.dim(), b.norm());
  for (const Point& p : points_) {
    if (!batch.push(p.coords)) return;
  }
  batch.finalize();
  batch_ = std::move(batch);
}

std::optional<std::vector<std::int32_t>> PreparedSet::to_lanes(const Point& x) const {
  if (!batch_ || !space_.contains(x)) return std::nullopt;
  const std::int64_t limit = kernels::LatticeBatch::coord_limit(batch_->dim());
  std::vector<std::int32_t> q;
  q.reserve(x.coords.size());
  for (std::int64_t c : x.coords) {
    if (c > limit || c < -limit) return std::nullopt;
    q.push_back(static_cast<std::int32_t>(c));
  }
  return q;
}

ExtRational PreparedSet::distance_to(const Point& x) const {
  if (points_.empty()) return ExtRational::infinity();
  if (auto q = to_lanes(x)) {
    return scale_ * Rational(kernels::min_distance(*q, *batch_).value);
  }
  ExtRational best = ExtRational::infinity();
  for (const Point& y : points_) best = std::min(best, ExtRational(space_.distance(x, y)));
  return best;
}

std::optional<std::size_t> PreparedSet::first_within(const Point& x, const Rational& radius) const {
  if (auto q = to_lanes(x)) {
    // integer d with scale*d < r  <=>  d < ceil(r / scale)
    const std::int64_t threshold = (radius / scale_).ceil();
    std::size_t i = kernels::first_below(*q, *batch_, threshold);
    if (i == points_.size()) return std::nullopt;
    return i;
  }
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (space_.distance(x, points_[i]) < radius) return i;
  }
  return std::nullopt;
}

}  // namespace isosep
