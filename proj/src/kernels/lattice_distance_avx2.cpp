// Compiled with -mavx2; only reached after a runtime CPU check.

#include <immintrin.h>

#include <algorithm>
#include <array>
#include <limits>
#include <vector>

#include "isosep/kernels/lattice_distance.hpp"

namespace isosep::kernels {

namespace {

constexpr std::size_t kWidth = 8;

// Distances of batch points [i, i+8) to the query, one per 32-bit lane.
struct Broadcast {
  __m256i v;
};

inline __m256i block_distance(const std::int32_t* const* lanes, const Broadcast* q, int dim,
                              Norm norm, std::size_t i) {
  __m256i acc = _mm256_setzero_si256();
  for (int k = 0; k < dim; ++k) {
    __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(lanes[k] + i));
    __m256i diff = _mm256_abs_epi32(_mm256_sub_epi32(x, q[k].v));
    acc = norm == Norm::l1 ? _mm256_add_epi32(acc, diff) : _mm256_max_epi32(acc, diff);
  }
  return acc;
}

struct Prepared {
  std::vector<const std::int32_t*> lanes;
  std::vector<Broadcast> query;
};

Prepared prepare(std::span<const std::int32_t> query, const LatticeBatch& batch) {
  Prepared p;
  p.lanes.resize(static_cast<std::size_t>(batch.dim()));
  p.query.resize(static_cast<std::size_t>(batch.dim()));
  for (int k = 0; k < batch.dim(); ++k) {
    p.lanes[k] = batch.lane(k).data();
    p.query[k].v = _mm256_set1_epi32(query[k]);
  }
  return p;
}

}  // namespace

MinResult min_distance_avx2(std::span<const std::int32_t> query, const LatticeBatch& batch) {
  const std::size_t n = batch.size();
  const std::size_t full = n / kWidth * kWidth;
  if (full == 0) return min_distance_tail(query, batch, 0, MinResult{0, n});

  const Prepared p = prepare(query, batch);
  __m256i best = _mm256_set1_epi32(std::numeric_limits<std::int32_t>::max());
  __m256i best_idx = _mm256_setzero_si256();
  __m256i idx = _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7);
  const __m256i step = _mm256_set1_epi32(static_cast<int>(kWidth));
  for (std::size_t i = 0; i < full; i += kWidth) {
    __m256i d = block_distance(p.lanes.data(), p.query.data(), batch.dim(), batch.norm(), i);
    // strict: an equal later value never replaces an earlier index in its lane
    __m256i better = _mm256_cmpgt_epi32(best, d);
    best = _mm256_blendv_epi8(best, d, better);
    best_idx = _mm256_blendv_epi8(best_idx, idx, better);
    idx = _mm256_add_epi32(idx, step);
  }

  alignas(32) std::array<std::int32_t, kWidth> vals{};
  alignas(32) std::array<std::int32_t, kWidth> inds{};
  _mm256_store_si256(reinterpret_cast<__m256i*>(vals.data()), best);
  _mm256_store_si256(reinterpret_cast<__m256i*>(inds.data()), best_idx);
  MinResult result{vals[0], static_cast<std::size_t>(inds[0])};
  for (std::size_t l = 1; l < kWidth; ++l) {
    const auto li = static_cast<std::size_t>(inds[l]);
    if (vals[l] < result.value || (vals[l] == result.value && li < result.index)) {
      result = {vals[l], li};
    }
  }
  return min_distance_tail(query, batch, full, result);
}

std::size_t first_below_avx2(std::span<const std::int32_t> query, const LatticeBatch& batch,
                             std::int64_t threshold) {
  const std::size_t n = batch.size();
  if (threshold <= 0) return n;
  // every distance fits in int32, so the first point (if any) qualifies
  if (threshold > std::numeric_limits<std::int32_t>::max()) return 0;

  const std::size_t full = n / kWidth * kWidth;
  const Prepared p = prepare(query, batch);
  const __m256i t = _mm256_set1_epi32(static_cast<std::int32_t>(threshold));
  for (std::size_t i = 0; i < full; i += kWidth) {
    __m256i d = block_distance(p.lanes.data(), p.query.data(), batch.dim(), batch.norm(), i);
    const int mask = _mm256_movemask_ps(_mm256_castsi256_ps(_mm256_cmpgt_epi32(t, d)));
    if (mask != 0) return i + static_cast<std::size_t>(__builtin_ctz(static_cast<unsigned>(mask)));
  }
  return first_below_tail(query, batch, full, threshold);
}

}  // namespace isosep::kernels
