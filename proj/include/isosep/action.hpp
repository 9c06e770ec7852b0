#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "isosep/metric_space.hpp"
#include "isosep/word.hpp"

namespace isosep {

enum class GeneratorKind : std::uint8_t { translation, leftmul, perm, shift };

const char* to_string(GeneratorKind kind);

/// One forward map of a generated action, together with its inverse.
class Generator {
 public:
  /// x -> x + v on Z^d.
  static Generator translation(std::vector<std::int64_t> v);
  /// x -> w x (reduced) on a free group; letters are signed, 1-based.
  static Generator leftmul(std::vector<std::int64_t> w);
  /// Vertex i -> p[i] on a finite graph.
  static Generator perm(std::vector<int> p);
  /// n -> n + 1 on the shift space.
  static Generator shift();

  GeneratorKind kind() const { return kind_; }
  const std::vector<std::int64_t>& vector() const { return data_; }
  const std::vector<std::int64_t>& word() const { return data_; }
  const std::vector<int>& permutation() const { return perm_; }

  Point forward(const Point& x) const;
  Point inverse(const Point& x) const;

  std::string describe() const;

 private:
  GeneratorKind kind_ = GeneratorKind::shift;
  std::vector<std::int64_t> data_;
  std::vector<int> perm_;
  std::vector<int> inv_perm_;
};

/// A metric space together with a nonempty list of generators; represents
/// the group they generate. Inverses are available for every generator, so
/// words may use any signed letter in [-n, -1] U [1, n].
class GeneratedAction {
 public:
  /// Throws InvalidInput if the list is empty or a generator does not fit the space.
  GeneratedAction(MetricSpace space, std::vector<Generator> generators);

  const MetricSpace& space() const { return space_; }
  const std::vector<Generator>& generators() const { return generators_; }
  int generator_count() const { return static_cast<int>(generators_.size()); }

  /// Image of p under a single signed letter.
  Point apply_letter(int letter, const Point& p) const;

  /// Image of p under w; the rightmost letter acts first.
  Point apply(const IsometryWord& w, const Point& p) const;
  PointSet apply(const IsometryWord& w, const PointSet& points) const;

 private:
  void check_letter(int letter) const;

  MetricSpace space_;
  std::vector<Generator> generators_;
};

struct IsometryViolation {
  int letter;  // signed; a negative letter means the inverse map
  Point x;
  Point y;
  std::string detail;
};

struct IsometryReport {
  bool exhaustive = false;
  std::size_t checked = 0;
  std::vector<IsometryViolation> violations;

  bool ok() const { return violations.empty(); }
};

/// For every generator and its inverse, checks d(g x, g y) = d(x, y) exactly
/// and g^-1 g x = x. Exhaustive on finite graphs (the sample is then ignored).
IsometryReport verify_isometry(const GeneratedAction& action,
                               const std::vector<std::pair<Point, Point>>& sample);

}  // namespace isosep
