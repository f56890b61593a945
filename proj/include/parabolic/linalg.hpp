#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "parabolic/rational.hpp"

namespace parabolic {

using Matrix = std::vector<RationalVector>;

/// Row space built one vector at a time. Rows are kept sparse, reduced against
/// earlier pivots and scaled to a unit pivot, so membership tests are a single
/// sweep over the stored rows.
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t width) : width_(width), scratch_(width) {}

  /// Adds v when it is independent of the current rows. Returns whether it was added.
  bool insert(const RationalVector& v);
  bool contains(const RationalVector& v);

  std::size_t rank() const { return rows_.size(); }
  std::size_t width() const { return width_; }

 private:
  using SparseRow = std::vector<std::pair<std::uint32_t, Rational>>;

  void load(const RationalVector& v);
  void reduce_scratch();

  std::size_t width_;
  std::vector<SparseRow> rows_;
  std::vector<std::uint32_t> pivots_;
  RationalVector scratch_;
};

std::size_t rank(const Matrix& rows);

/// Unique solution of A x = b for square nonsingular A; nullopt when singular.
std::optional<RationalVector> solve_square(Matrix a, RationalVector b);

/// Smallest positive multiple of v with coprime integer entries. Zero stays zero.
std::vector<Integer> primitive_integer(const RationalVector& v);

}  // namespace parabolic
