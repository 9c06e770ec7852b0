#pragma once

// Batched l1 / l-infinity distance kernels over integer lattice points.
//
// A LatticeBatch stores points structure-of-arrays in 32-bit lanes. Every
// kernel exists as a scalar reference and (on x86-64) an AVX2 variant; the
// public entry points dispatch once at startup on CPU support. All variants
// return identical results: the first index in batch order wins ties.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace isosep::kernels {

enum class Norm : std::uint8_t { l1, linf };

enum class Backend : std::uint8_t { scalar, avx2 };

class LatticeBatch {
 public:
  LatticeBatch(int dim, Norm norm);

  /// Largest |coordinate| for which l1 sums stay inside int32.
  static std::int64_t coord_limit(int dim);

  /// Returns false (and leaves the batch unchanged) when the point is outside
  /// the representable range; callers then fall back to generic code.
  bool push(std::span<const std::int64_t> coords);

  int dim() const { return dim_; }
  Norm norm() const { return norm_; }
  std::size_t size() const { return count_; }

  /// Lane `k` of all points, contiguous.
  std::span<const std::int32_t> lane(int k) const;

  /// Reorganizes storage for the kernels; called lazily.
  void finalize() const;

 private:
  int dim_;
  Norm norm_;
  std::size_t count_ = 0;
  std::vector<std::int32_t> rows_;          // point-major staging
  mutable std::vector<std::int32_t> lanes_;  // lane-major, padded
  mutable std::size_t stride_ = 0;
  mutable bool dirty_ = true;
};

struct MinResult {
  std::int64_t value = 0;
  std::size_t index = 0;  // == batch.size() for an empty batch
};

/// Minimum distance from query to the batch. query must satisfy the range
/// limit (see LatticeBatch::coord_limit).
MinResult min_distance(std::span<const std::int32_t> query, const LatticeBatch& batch);

/// First index whose distance is strictly below threshold, or batch.size().
std::size_t first_below(std::span<const std::int32_t> query, const LatticeBatch& batch,
                        std::int64_t threshold);

MinResult min_distance_scalar(std::span<const std::int32_t> query, const LatticeBatch& batch);
std::size_t first_below_scalar(std::span<const std::int32_t> query, const LatticeBatch& batch,
                               std::int64_t threshold);

// Scalar continuation from index `begin`, used for vector-loop remainders.
MinResult min_distance_tail(std::span<const std::int32_t> query, const LatticeBatch& batch,
                            std::size_t begin, MinResult best);
std::size_t first_below_tail(std::span<const std::int32_t> query, const LatticeBatch& batch,
                             std::size_t begin, std::int64_t threshold);

#if defined(__x86_64__) || defined(_M_X64)
#define ISOSEP_HAVE_AVX2_KERNELS 1
MinResult min_distance_avx2(std::span<const std::int32_t> query, const LatticeBatch& batch);
std::size_t first_below_avx2(std::span<const std::int32_t> query, const LatticeBatch& batch,
                             std::int64_t threshold);
#endif

bool cpu_has_avx2();

/// Backend used by the dispatching entry points.
Backend active_backend();
/// Override the dispatch choice (tests, benchmarking). Requesting avx2 on a
/// CPU without it falls back to scalar. Returns the backend now in effect.
Backend set_backend(Backend b);

}  // namespace isosep::kernels
