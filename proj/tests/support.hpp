#pragma once

#include <doctest.h>

#include "isosep/oracle.hpp"
#include "isosep/serialize.hpp"

namespace testing {

using namespace isosep;
using kernels::Norm;
using json_io::json;

inline Point L(std::int64_t x) { return Point::lattice({x}); }
inline Point L(std::int64_t x, std::int64_t y) { return Point::lattice({x, y}); }
inline Point I(std::int64_t n) { return Point::integer(n); }
inline Point V(std::int64_t n) { return Point::vertex(n); }
inline Rational R(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }

inline GeneratedAction z1() {
  return GeneratedAction(MetricSpace::zd(1, Norm::linf), {Generator::translation({1})});
}

inline GeneratedAction z2(Norm norm = Norm::linf) {
  return GeneratedAction(MetricSpace::zd(2, norm),
                         {Generator::translation({1, 0}), Generator::translation({0, 1})});
}

inline GeneratedAction shift() {
  return GeneratedAction(MetricSpace::discrete_shift(), {Generator::shift()});
}

inline GeneratedAction free2() {
  return GeneratedAction(MetricSpace::free(2), {Generator::leftmul({1}), Generator::leftmul({2})});
}

inline GeneratedAction c4() {
  return GeneratedAction(MetricSpace::complete_graph(4), {Generator::perm({1, 2, 3, 0})});
}

inline IsometryWord W(std::initializer_list<int> letters) { return IsometryWord(letters); }

// Fallback and restart both fire here (l1 metric).
inline InstanceSpec frozen_fallback() {
  return json_io::to_instance_spec(json_io::instance_from_json(json::parse(R"({
    "space":{"kind":"zd","dim":2,"norm":"l1"},
    "generators":[{"kind":"translation","v":[1,0]},{"kind":"translation","v":[0,1]}],
    "P":[{"point":[-3,0],"eps":"4"},{"point":[0,3],"eps":"3"},{"point":[-1,1],"eps":"2"}],
    "Q":[[-1,1]]})")));
}

// A restart that ends in the direct case (l-infinity metric).
inline InstanceSpec frozen_restart() {
  return json_io::to_instance_spec(json_io::instance_from_json(json::parse(R"({
    "space":{"kind":"zd","dim":2,"norm":"linf"},
    "generators":[{"kind":"translation","v":[1,0]},{"kind":"translation","v":[0,1]}],
    "P":[{"point":[-1,-3],"eps":"4"},{"point":[1,3],"eps":"4"}],
    "Q":[[-2,1],[1,-3],[0,2],[-1,2]]})")));
}

inline bool has_case(const SeparationCertificate& c, LevelCase which) {
  for (const TraceLevel& l : c.trace.levels) {
    if (l.outcome == which) return true;
  }
  return false;
}

inline bool has_restart(const SeparationCertificate& c) {
  for (const TraceLevel& l : c.trace.levels) {
    if (l.restarts > 0) return true;
  }
  return false;
}

inline bool restarts_bounded(const SeparationCertificate& c) {
  for (const TraceLevel& l : c.trace.levels) {
    if (l.restarts > l.target_count) return false;
  }
  return true;
}

}  // namespace testing
