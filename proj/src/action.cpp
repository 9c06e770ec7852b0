#include "isosep/action.hpp"

#include <algorithm>

#include "isosep/errors.hpp"

namespace isosep {

namespace {

std::vector<std::int64_t> free_multiply(const std::vector<std::int64_t>& w,
                                        const std::vector<std::int64_t>& x) {
  std::vector<std::int64_t> out = w;
  for (std::int64_t l : x) {
    if (!out.empty() && out.back() == -l) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

std::vector<std::int64_t> free_inverse(const std::vector<std::int64_t>& w) {
  std::vector<std::int64_t> r(w.rbegin(), w.rend());
  for (auto& l : r) l = -l;
  return r;
}

}  // namespace

const char* to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::translation: return "translation";
    case GeneratorKind::leftmul: return "leftmul";
    case GeneratorKind::perm: return "perm";
    case GeneratorKind::shift: return "shift";
  }
  return "?";
}

Generator Generator::translation(std::vector<std::int64_t> v) {
  if (v.empty()) throw InvalidInput("translation vector must be nonempty");
  Generator g;
  g.kind_ = GeneratorKind::translation;
  g.data_ = std::move(v);
  return g;
}

Generator Generator::leftmul(std::vector<std::int64_t> w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == 0) throw InvalidInput("leftmul word contains letter 0");
    if (i > 0 && w[i - 1] == -w[i]) throw InvalidInput("leftmul word is not reduced");
  }
  Generator g;
  g.kind_ = GeneratorKind::leftmul;
  g.data_ = std::move(w);
  return g;
}

Generator Generator::perm(std::vector<int> p) {
  const int n = static_cast<int>(p.size());
  std::vector<int> inv(p.size(), -1);
  for (int i = 0; i < n; ++i) {
    if (p[i] < 0 || p[i] >= n || inv[p[i]] != -1) {
      throw InvalidInput("perm is not a permutation of 0..n-1");
    }
    inv[p[i]] = i;
  }
  Generator g;
  g.kind_ = GeneratorKind::perm;
  g.perm_ = std::move(p);
  g.inv_perm_ = std::move(inv);
  return g;
}

Generator Generator::shift() {
  Generator g;
  g.kind_ = GeneratorKind::shift;
  return g;
}

Point Generator::forward(const Point& x) const {
  switch (kind_) {
    case GeneratorKind::translation: {
      Point y = x;
      for (std::size_t k = 0; k < data_.size(); ++k) y.coords[k] += data_[k];
      return y;
    }
    case GeneratorKind::leftmul: return Point::word(free_multiply(data_, x.coords));
    case GeneratorKind::perm: return Point::vertex(perm_[static_cast<std::size_t>(x.coords[0])]);
    case GeneratorKind::shift: return Point::integer(x.coords[0] + 1);
  }
  return x;
}

Point Generator::inverse(const Point& x) const {
  switch (kind_) {
    case GeneratorKind::translation: {
      Point y = x;
      for (std::size_t k = 0; k < data_.size(); ++k) y.coords[k] -= data_[k];
      return y;
    }
    case GeneratorKind::leftmul: return Point::word(free_multiply(free_inverse(data_), x.coords));
    case GeneratorKind::perm:
      return Point::vertex(inv_perm_[static_cast<std::size_t>(x.coords[0])]);
    case GeneratorKind::shift: return Point::integer(x.coords[0] - 1);
  }
  return x;
}

std::string Generator::describe() const {
  switch (kind_) {
    case GeneratorKind::translation: return "translation" + Point::lattice(data_).to_string();
    case GeneratorKind::leftmul: return "leftmul(" + Point::word(data_).to_string() + ")";
    case GeneratorKind::perm: {
      std::string s = "perm[";
      for (std::size_t i = 0; i < perm_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(perm_[i]);
      }
      return s + "]";
    }
    case GeneratorKind::shift: return "shift";
  }
  return "?";
}

GeneratedAction::GeneratedAction(MetricSpace space, std::vector<Generator> generators)
    : space_(std::move(space)), generators_(std::move(generators)) {
  if (generators_.empty()) throw InvalidInput("an action needs at least one generator");
  const MetricSpace b = space_.base();
  for (const Generator& g : generators_) {
    bool fits = false;
    switch (g.kind()) {
      case GeneratorKind::translation:
        fits = b.kind() == SpaceKind::zd && static_cast<int>(g.vector().size()) == b.dim();
        break;
      case GeneratorKind::leftmul:
        fits = b.kind() == SpaceKind::free &&
               std::all_of(g.word().begin(), g.word().end(),
                           [&](std::int64_t l) { return l <= b.rank() && -l <= b.rank(); });
        break;
      case GeneratorKind::perm:
        fits = b.kind() == SpaceKind::finite_graph &&
               static_cast<int>(g.permutation().size()) == b.vertex_count();
        break;
      case GeneratorKind::shift: fits = b.kind() == SpaceKind::discrete_shift; break;
    }
    if (!fits) {
      throw InvalidInput("generator " + g.describe() + " does not act on " + space_.describe());
    }
  }
}

void GeneratedAction::check_letter(int letter) const {
  if (letter == 0 || letter > generator_count() || -letter > generator_count()) {
    throw InvalidInput("generator index " + std::to_string(letter) + " out of range (have " +
                       std::to_string(generator_count()) + ")");
  }
}

Point GeneratedAction::apply_letter(int letter, const Point& p) const {
  check_letter(letter);
  const Generator& g = generators_[static_cast<std::size_t>(letter > 0 ? letter : -letter) - 1];
  return letter > 0 ? g.forward(p) : g.inverse(p);
}

Point GeneratedAction::apply(const IsometryWord& w, const Point& p) const {
  space_.require_point(p);
  for (int l : w.letters()) check_letter(l);
  Point x = p;
  const auto& letters = w.letters();
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) x = apply_letter(*it, x);
  return x;
}

PointSet GeneratedAction::apply(const IsometryWord& w, const PointSet& points) const {
  PointSet out;
  out.reserve(points.size());
  for (const Point& p : points) out.push_back(apply(w, p));
  return out;
}

IsometryReport verify_isometry(const GeneratedAction& action,
                               const std::vector<std::pair<Point, Point>>& sample) {
  IsometryReport report;
  const MetricSpace& space = action.space();
  std::vector<std::pair<Point, Point>> pairs;
  const MetricSpace b = space.base();
  if (b.kind() == SpaceKind::finite_graph) {
    report.exhaustive = true;
    for (int i = 0; i < b.vertex_count(); ++i) {
      for (int j = 0; j < b.vertex_count(); ++j) pairs.emplace_back(Point::vertex(i), Point::vertex(j));
    }
  } else {
    pairs = sample;
  }
  for (int gi = 1; gi <= action.generator_count(); ++gi) {
    for (int letter : {gi, -gi}) {
      for (const auto& [x, y] : pairs) {
        ++report.checked;
        const Point gx = action.apply_letter(letter, x);
        const Point gy = action.apply_letter(letter, y);
        const Rational before = space.distance(x, y);
        const Rational after = space.distance(gx, gy);
        if (before != after) {
          report.violations.push_back({letter, x, y,
                                       "d(x,y)=" + before.to_string() + " but d(gx,gy)=" +
                                           after.to_string()});
        }
        if (!(action.apply_letter(-letter, gx) == x)) {
          report.violations.push_back({letter, x, x, "inverse does not undo generator"});
        }
      }
    }
  }
  return report;
}

}  // namespace isosep
