#include "isosep/point.hpp"

#include <algorithm>
#include <unordered_set>

#include "isosep/errors.hpp"

namespace isosep {

const char* to_string(PointKind kind) {
  switch (kind) {
    case PointKind::lattice: return "lattice";
    case PointKind::word: return "word";
    case PointKind::vertex: return "vertex";
    case PointKind::integer: return "integer";
  }
  return "?";
}

std::string Point::to_string() const {
  switch (kind) {
    case PointKind::lattice: {
      std::string s = "(";
      for (std::size_t i = 0; i < coords.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(coords[i]);
      }
      return s + ")";
    }
    case PointKind::word: {
      if (coords.empty()) return "e";
      std::string s;
      for (std::int64_t letter : coords) {
        s += static_cast<char>('a' + (letter > 0 ? letter : -letter) - 1);
        if (letter < 0) s += '\'';
      }
      return s;
    }
    case PointKind::vertex: return "v" + std::to_string(coords.at(0));
    case PointKind::integer: return std::to_string(coords.at(0));
  }
  return "?";
}

bool append_unique(PointSet& set, const Point& x) {
  if (std::find(set.begin(), set.end(), x) != set.end()) return false;
  set.push_back(x);
  return true;
}

void require_distinct(const PointSet& set, const char* what) {
  std::unordered_set<Point> seen;
  for (const Point& p : set) {
    if (!seen.insert(p).second) {
      throw InvalidInput(std::string(what) + " contains duplicate point " + p.to_string());
    }
  }
}

}  // namespace isosep
