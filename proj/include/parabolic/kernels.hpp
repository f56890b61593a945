#pragma once

// Data-parallel building blocks. Every kernel takes an Exec policy; the Serial
// branch is the reference implementation the tests compare against.

#include <omp.h>

#include <cstddef>
#include <cstdint>
#include <exception>
#include <vector>

namespace parabolic {

enum class Exec { Serial, Parallel };

using SubsetMask = std::uint64_t;

/// Returns every mask in [0, 2^n) accepted by `keep`, in increasing order.
template <class Keep>
std::vector<SubsetMask> collect_masks(int n, Exec exec, const Keep& keep) {
  const SubsetMask total = SubsetMask{1} << n;
  if (exec == Exec::Serial || n < 10) {
    std::vector<SubsetMask> out;
    for (SubsetMask mask = 0; mask < total; ++mask)
      if (keep(mask)) out.push_back(mask);
    return out;
  }

  const std::int64_t chunks = 256;
  const SubsetMask chunk_size = (total + chunks - 1) / chunks;
  std::vector<std::vector<SubsetMask>> found(chunks);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t c = 0; c < chunks; ++c) {
    const SubsetMask lo = static_cast<SubsetMask>(c) * chunk_size;
    const SubsetMask hi = lo + chunk_size < total ? lo + chunk_size : total;
    for (SubsetMask mask = lo; mask < hi; ++mask)
      if (keep(mask)) found[c].push_back(mask);
  }
  std::vector<SubsetMask> out;
  for (auto& part : found) out.insert(out.end(), part.begin(), part.end());
  return out;
}

/// out[i] = fn(i) for i in [0, count); results land in index order either way.
/// An exception thrown by fn is rethrown on the calling thread (lowest index wins).
template <class Result, class Fn>
std::vector<Result> map_indices(std::size_t count, Exec exec, const Fn& fn) {
  std::vector<Result> out(count);
  if (exec == Exec::Serial) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::vector<std::exception_ptr> errors(count);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(count); ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      out[k] = fn(k);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

inline std::vector<int> mask_to_indices(SubsetMask mask) {
  std::vector<int> out;
  for (int i = 0; mask != 0; ++i, mask >>= 1)
    if (mask & 1) out.push_back(i);
  return out;
}

inline SubsetMask indices_to_mask(const std::vector<int>& indices) {
  SubsetMask mask = 0;
  for (int i : indices) mask |= SubsetMask{1} << i;
  return mask;
}

}  // namespace parabolic
