#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace isosep {

enum class PointKind : std::uint8_t {
  lattice,  // integer vector, coords = components
  word,     // reduced free-group word, coords = signed letters (+i / -i, i >= 1)
  vertex,   // finite graph vertex, coords = {id}
  integer,  // shift space element, coords = {n}
};

const char* to_string(PointKind kind);

/// A point of some MetricSpace. Only meaningful relative to its space;
/// equality is structural.
struct Point {
  PointKind kind = PointKind::integer;
  std::vector<std::int64_t> coords;

  static Point lattice(std::vector<std::int64_t> v) { return {PointKind::lattice, std::move(v)}; }
  static Point word(std::vector<std::int64_t> letters) { return {PointKind::word, std::move(letters)}; }
  static Point vertex(std::int64_t id) { return {PointKind::vertex, {id}}; }
  static Point integer(std::int64_t n) { return {PointKind::integer, {n}}; }

  friend bool operator==(const Point&, const Point&) = default;

  /// Compact human-readable form: (1,-2), ab'a, v3, 7.
  std::string to_string() const;
};

/// Ordered list of distinct points; order is the tie-breaker everywhere.
using PointSet = std::vector<Point>;

/// Appends x unless already present. Returns true when appended.
bool append_unique(PointSet& set, const Point& x);

/// Throws InvalidInput if the set contains duplicates.
void require_distinct(const PointSet& set, const char* what);

}  // namespace isosep

template <>
struct std::hash<isosep::Point> {
  std::size_t operator()(const isosep::Point& p) const noexcept {
    std::size_t h = static_cast<std::size_t>(p.kind) * 0x9e3779b97f4a7c15ULL;
    for (std::int64_t c : p.coords) {
      h ^= std::hash<std::int64_t>{}(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};
