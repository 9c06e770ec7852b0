#include <vector>

#include "isosep/kernels/lattice_distance.hpp"
#include "support.hpp"

using namespace testing;
using namespace isosep::kernels;

namespace {

std::int64_t reference(const std::vector<std::int32_t>& q, const std::vector<std::int32_t>& p, Norm n) {
  std::int64_t acc = 0;
  for (std::size_t k = 0; k < q.size(); ++k) {
    const std::int64_t d = std::abs(static_cast<std::int64_t>(q[k]) - p[k]);
    acc = n == Norm::l1 ? acc + d : std::max(acc, d);
  }
  return acc;
}

}  // namespace

TEST_CASE("scalar kernels match a direct computation") {
  SplitMix64 rng(11);
  for (Norm norm : {Norm::l1, Norm::linf}) {
    for (int dim = 1; dim <= 4; ++dim) {
      for (std::size_t n : {0, 1, 7, 8, 9, 31, 64, 100}) {
        LatticeBatch batch(dim, norm);
        std::vector<std::vector<std::int32_t>> pts;
        for (std::size_t i = 0; i < n; ++i) {
          std::vector<std::int64_t> c(dim);
          std::vector<std::int32_t> c32(dim);
          for (int k = 0; k < dim; ++k) c32[k] = static_cast<std::int32_t>(c[k] = rng.uniform(-20, 20));
          REQUIRE(batch.push(c));
          pts.push_back(c32);
        }
        std::vector<std::int32_t> q(dim);
        for (int k = 0; k < dim; ++k) q[k] = static_cast<std::int32_t>(rng.uniform(-20, 20));

        const MinResult m = min_distance_scalar(q, batch);
        if (n == 0) {
          CHECK(m.index == 0);
          continue;
        }
        std::int64_t best = reference(q, pts[0], norm);
        std::size_t idx = 0;
        for (std::size_t i = 1; i < n; ++i) {
          const std::int64_t d = reference(q, pts[i], norm);
          if (d < best) best = d, idx = i;
        }
        CHECK(m.value == best);
        CHECK(m.index == idx);
        for (std::int64_t t : {best, best + 1, best + 5}) {
          std::size_t first = n;
          for (std::size_t i = 0; i < n && first == n; ++i) {
            if (reference(q, pts[i], norm) < t) first = i;
          }
          CHECK(first_below_scalar(q, batch, t) == first);
        }
      }
    }
  }
}

#ifdef ISOSEP_HAVE_AVX2_KERNELS
TEST_CASE("avx2 kernels agree with scalar, ties included") {
  if (!cpu_has_avx2()) return;
  SplitMix64 rng(29);
  for (int round = 0; round < 400; ++round) {
    const Norm norm = round % 2 ? Norm::l1 : Norm::linf;
    const int dim = 1 + static_cast<int>(rng.below(4));
    const std::size_t n = rng.below(70);
    // small coordinate range forces many ties
    const std::int64_t span = round % 3 == 0 ? 2 : 50;
    LatticeBatch batch(dim, norm);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::int64_t> c(dim);
      for (auto& x : c) x = rng.uniform(-span, span);
      REQUIRE(batch.push(c));
    }
    std::vector<std::int32_t> q(dim);
    for (auto& x : q) x = static_cast<std::int32_t>(rng.uniform(-span, span));
    const MinResult a = min_distance_scalar(q, batch);
    const MinResult b = min_distance_avx2(q, batch);
    CHECK(a.value == b.value);
    CHECK(a.index == b.index);
    for (std::int64_t t : {std::int64_t{0}, std::int64_t{1}, a.value, a.value + 1, 3 * span,
                           std::int64_t{1} << 40}) {
      CHECK(first_below_scalar(q, batch, t) == first_below_avx2(q, batch, t));
    }
  }
}

TEST_CASE("avx2 kernels at the coordinate limit") {
  if (!cpu_has_avx2()) return;
  for (Norm norm : {Norm::l1, Norm::linf}) {
    const int dim = 3;
    const std::int64_t lim = LatticeBatch::coord_limit(dim);
    LatticeBatch batch(dim, norm);
    for (int i = 0; i < 17; ++i) {
      const std::int64_t s = i % 2 ? lim : -lim;
      REQUIRE(batch.push(std::vector<std::int64_t>{s, -s, s}));
    }
    const std::vector<std::int32_t> q{static_cast<std::int32_t>(-lim), static_cast<std::int32_t>(lim),
                                      static_cast<std::int32_t>(-lim)};
    CHECK(min_distance_scalar(q, batch).value == min_distance_avx2(q, batch).value);
    CHECK(min_distance_avx2(q, batch).index == 0);
    CHECK(min_distance_avx2(q, batch).value == 0);
  }
}
#endif

TEST_CASE("out of range points are refused") {
  LatticeBatch batch(2, Norm::l1);
  const std::int64_t lim = LatticeBatch::coord_limit(2);
  CHECK(batch.push(std::vector<std::int64_t>{lim, -lim}));
  CHECK_FALSE(batch.push(std::vector<std::int64_t>{lim + 1, 0}));
  CHECK(batch.size() == 1);
}

TEST_CASE("backend switch") {
  const Backend before = active_backend();
  set_backend(Backend::scalar);
  CHECK(active_backend() == Backend::scalar);
  set_backend(before);
  CHECK(active_backend() == before);
}

TEST_CASE("prepared sets give the same answers with and without kernels") {
  SplitMix64 rng(5);
  const MetricSpace spaces[] = {MetricSpace::zd(2, Norm::l1), MetricSpace::zd(3, Norm::linf),
                                MetricSpace::scaled(R(3, 2), MetricSpace::zd(2, Norm::linf))};
  for (const MetricSpace& space : spaces) {
    const int dim = space.dim();
    for (int round = 0; round < 50; ++round) {
      PointSet Q;
      const std::size_t n = rng.below(40);
      for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::int64_t> c(dim);
        for (auto& x : c) x = rng.uniform(-9, 9);
        append_unique(Q, Point::lattice(c));
      }
      const PreparedSet prepared(space, Q);
      if (!Q.empty()) CHECK(prepared.uses_kernel());
      std::vector<std::int64_t> c(dim);
      for (auto& x : c) x = rng.uniform(-12, 12);
      const Point x = Point::lattice(c);
      CHECK(prepared.distance_to(x) == set_distance(space, {x}, Q));
      for (Rational r : {R(1), R(5, 2), R(3), R(7)}) {
        std::optional<std::size_t> expect;
        for (std::size_t i = 0; i < Q.size() && !expect; ++i) {
          if (space.distance(x, Q[i]) < r) expect = i;
        }
        CHECK(prepared.first_within(x, r) == expect);
      }
    }
  }
}
