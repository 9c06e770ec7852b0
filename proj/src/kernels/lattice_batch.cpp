#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <limits>
#include <stdexcept>

#include "isosep/kernels/lattice_distance.hpp"

namespace isosep::kernels {

namespace {

constexpr std::size_t kPad = 8;

Backend detect() {
  if (const char* env = std::getenv("ISOSEP_FORCE_SCALAR"); env && *env && *env != '0') {
    return Backend::scalar;
  }
  return cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
}

std::atomic<Backend>& backend_slot() {
  static std::atomic<Backend> slot{detect()};
  return slot;
}

}  // namespace

LatticeBatch::LatticeBatch(int dim, Norm norm) : dim_(dim), norm_(norm) {
  if (dim < 1) throw std::invalid_argument("LatticeBatch dimension must be >= 1");
}

std::int64_t LatticeBatch::coord_limit(int dim) {
  // |x - y| <= 2 * limit per lane, summed over dim lanes, must stay below 2^31.
  return (std::numeric_limits<std::int32_t>::max() / 2) / dim;
}

bool LatticeBatch::push(std::span<const std::int64_t> coords) {
  if (static_cast<int>(coords.size()) != dim_) return false;
  const std::int64_t limit = coord_limit(dim_);
  for (std::int64_t c : coords) {
    if (c > limit || c < -limit) return false;
  }
  for (std::int64_t c : coords) rows_.push_back(static_cast<std::int32_t>(c));
  ++count_;
  dirty_ = true;
  return true;
}

void LatticeBatch::finalize() const {
  if (!dirty_) return;
  stride_ = (count_ + kPad - 1) / kPad * kPad;
  lanes_.assign(stride_ * static_cast<std::size_t>(dim_), 0);
  for (std::size_t i = 0; i < count_; ++i) {
    for (int k = 0; k < dim_; ++k) {
      lanes_[static_cast<std::size_t>(k) * stride_ + i] = rows_[i * dim_ + k];
    }
  }
  dirty_ = false;
}

std::span<const std::int32_t> LatticeBatch::lane(int k) const {
  finalize();
  return {lanes_.data() + static_cast<std::size_t>(k) * stride_, count_};
}

namespace {

std::vector<const std::int32_t*> lane_pointers(const LatticeBatch& batch) {
  std::vector<const std::int32_t*> lanes(static_cast<std::size_t>(batch.dim()));
  for (int k = 0; k < batch.dim(); ++k) lanes[k] = batch.lane(k).data();
  return lanes;
}

std::int64_t scalar_distance(std::span<const std::int32_t> query,
                             const std::vector<const std::int32_t*>& lanes, Norm norm,
                             std::size_t i) {
  std::int64_t d = 0;
  for (std::size_t k = 0; k < lanes.size(); ++k) {
    std::int64_t diff = static_cast<std::int64_t>(lanes[k][i]) - query[k];
    if (diff < 0) diff = -diff;
    d = norm == Norm::l1 ? d + diff : std::max(d, diff);
  }
  return d;
}

}  // namespace

MinResult min_distance_scalar(std::span<const std::int32_t> query, const LatticeBatch& batch) {
  return min_distance_tail(query, batch, 0, MinResult{0, batch.size()});
}

MinResult min_distance_tail(std::span<const std::int32_t> query, const LatticeBatch& batch,
                            std::size_t begin, MinResult best) {
  const auto lanes = lane_pointers(batch);
  for (std::size_t i = begin; i < batch.size(); ++i) {
    std::int64_t d = scalar_distance(query, lanes, batch.norm(), i);
    if (best.index == batch.size() || d < best.value) best = {d, i};
  }
  return best;
}

std::size_t first_below_scalar(std::span<const std::int32_t> query, const LatticeBatch& batch,
                               std::int64_t threshold) {
  return first_below_tail(query, batch, 0, threshold);
}

std::size_t first_below_tail(std::span<const std::int32_t> query, const LatticeBatch& batch,
                             std::size_t begin, std::int64_t threshold) {
  const auto lanes = lane_pointers(batch);
  for (std::size_t i = begin; i < batch.size(); ++i) {
    if (scalar_distance(query, lanes, batch.norm(), i) < threshold) return i;
  }
  return batch.size();
}

Backend active_backend() { return backend_slot().load(std::memory_order_relaxed); }

Backend set_backend(Backend b) {
  if (b == Backend::avx2 && !cpu_has_avx2()) b = Backend::scalar;
  backend_slot().store(b, std::memory_order_relaxed);
  return b;
}

MinResult min_distance(std::span<const std::int32_t> query, const LatticeBatch& batch) {
#ifdef ISOSEP_HAVE_AVX2_KERNELS
  if (active_backend() == Backend::avx2) return min_distance_avx2(query, batch);
#endif
  return min_distance_scalar(query, batch);
}

std::size_t first_below(std::span<const std::int32_t> query, const LatticeBatch& batch,
                        std::int64_t threshold) {
#ifdef ISOSEP_HAVE_AVX2_KERNELS
  if (active_backend() == Backend::avx2) return first_below_avx2(query, batch, threshold);
#endif
  return first_below_scalar(query, batch, threshold);
}

bool cpu_has_avx2() {
#if defined(ISOSEP_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

}  // namespace isosep::kernels
