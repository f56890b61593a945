#include "parabolic/linalg.hpp"

#include <cassert>

namespace parabolic {

void EchelonBasis::load(const RationalVector& v) {
  assert(v.size() == width_);
  for (std::size_t i = 0; i < width_; ++i) scratch_[i] = v[i];
}

void EchelonBasis::reduce_scratch() {
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const Rational factor = scratch_[pivots_[r]];
    if (factor == 0) continue;
    for (const auto& [idx, val] : rows_[r]) scratch_[idx] -= factor * val;
  }
}

bool EchelonBasis::insert(const RationalVector& v) {
  load(v);
  reduce_scratch();
  SparseRow row;
  for (std::size_t i = 0; i < width_; ++i)
    if (scratch_[i] != 0) row.emplace_back(static_cast<std::uint32_t>(i), scratch_[i]);
  if (row.empty()) return false;
  const Rational lead = row.front().second;
  for (auto& entry : row) entry.second /= lead;
  pivots_.push_back(row.front().first);
  rows_.push_back(std::move(row));
  return true;
}

bool EchelonBasis::contains(const RationalVector& v) {
  load(v);
  reduce_scratch();
  for (const auto& x : scratch_)
    if (x != 0) return false;
  return true;
}

std::size_t rank(const Matrix& rows) {
  if (rows.empty()) return 0;
  EchelonBasis basis(rows.front().size());
  for (const auto& r : rows) basis.insert(r);
  return basis.rank();
}

std::optional<RationalVector> solve_square(Matrix a, RationalVector b) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  RationalVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

std::vector<Integer> primitive_integer(const RationalVector& v) {
  Integer den = lcm_of_denominators(v);
  std::vector<Integer> out(v.size());
  Integer g = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rational scaled = v[i] * den;
    out[i] = scaled.get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out[i].get_mpz_t());
  }
  if (g > 1)
    for (auto& x : out) x /= g;
  return out;
}

}  // namespace parabolic
