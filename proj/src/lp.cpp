#include "parabolic/lp.hpp"

#include <cstddef>

#include "parabolic/error.hpp"

namespace parabolic {
namespace {

class Tableau {
 public:
  Tableau(Matrix rows, RationalVector rhs, std::vector<std::size_t> basis)
      : rows_(std::move(rows)), rhs_(std::move(rhs)), basis_(std::move(basis)) {}

  // Runs Bland's-rule simplex over columns [0, allowed). Returns false when unbounded.
  bool optimize(RationalVector& reduced, std::size_t allowed) {
    while (true) {
      std::size_t enter = allowed;
      for (std::size_t j = 0; j < allowed; ++j)
        if (reduced[j] > 0) {
          enter = j;
          break;
        }
      if (enter == allowed) return true;

      std::size_t leave = rows_.size();
      Rational best;
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (rows_[i][enter] <= 0) continue;
        Rational ratio = rhs_[i] / rows_[i][enter];
        if (leave == rows_.size() || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == rows_.size()) return false;
      pivot(leave, enter, reduced);
    }
  }

  void pivot(std::size_t r, std::size_t c, RationalVector& reduced) {
    const Rational p = rows_[r][c];
    for (auto& v : rows_[r]) v /= p;
    rhs_[r] /= p;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i == r || rows_[i][c] == 0) continue;
      const Rational f = rows_[i][c];
      for (std::size_t j = 0; j < rows_[i].size(); ++j)
        if (rows_[r][j] != 0) rows_[i][j] -= f * rows_[r][j];
      rhs_[i] -= f * rhs_[r];
    }
    if (reduced[c] != 0) {
      const Rational f = reduced[c];
      for (std::size_t j = 0; j < reduced.size(); ++j)
        if (rows_[r][j] != 0) reduced[j] -= f * rows_[r][j];
    }
    basis_[r] = c;
  }

  void drop_row(std::size_t r) {
    rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(r));
    rhs_.erase(rhs_.begin() + static_cast<std::ptrdiff_t>(r));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
  }

  std::size_t row_count() const { return rows_.size(); }
  const Rational& at(std::size_t r, std::size_t c) const { return rows_[r][c]; }
  const Rational& rhs(std::size_t r) const { return rhs_[r]; }
  std::size_t basic(std::size_t r) const { return basis_[r]; }

 private:
  Matrix rows_;
  RationalVector rhs_;
  std::vector<std::size_t> basis_;
};

}  // namespace

LpSolution solve(const LinearProgram& lp) {
  const std::size_t m = lp.b.size();
  const std::size_t nvars = lp.c.size();
  if (lp.a.size() != m)
    throw Error(Module::Lp, ErrorKind::DimensionMismatch, "constraint matrix and right-hand side disagree");
  for (const auto& row : lp.a)
    if (row.size() != nvars)
      throw Error(Module::Lp, ErrorKind::DimensionMismatch, "constraint row has wrong width");

  // Phase one: flip rows to b >= 0 and append one artificial column per row.
  std::vector<int> sign(m, 1);
  Matrix rows(m, RationalVector(nvars + m));
  RationalVector rhs(m);
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    sign[i] = lp.b[i] < 0 ? -1 : 1;
    for (std::size_t j = 0; j < nvars; ++j) rows[i][j] = sign[i] < 0 ? Rational(-lp.a[i][j]) : lp.a[i][j];
    rows[i][nvars + i] = 1;
    rhs[i] = sign[i] < 0 ? Rational(-lp.b[i]) : lp.b[i];
    basis[i] = nvars + i;
  }
  RationalVector reduced(nvars + m);
  for (std::size_t j = 0; j < nvars; ++j)
    for (std::size_t i = 0; i < m; ++i) reduced[j] += rows[i][j];

  Tableau tab(std::move(rows), std::move(rhs), std::move(basis));
  tab.optimize(reduced, nvars + m);  // bounded above by 0

  Rational infeasibility = 0;
  for (std::size_t i = 0; i < tab.row_count(); ++i)
    if (tab.basic(i) >= nvars) infeasibility += tab.rhs(i);

  LpSolution out;
  if (infeasibility > 0) {
    out.status = LpStatus::Infeasible;
    out.farkas.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      // reduced cost of artificial i is -1 - y_i under the phase-one costs
      Rational y = -1 - reduced[nvars + i];
      out.farkas[i] = sign[i] < 0 ? Rational(-y) : y;
    }
    for (std::size_t j = 0; j < nvars; ++j) {
      Rational s = 0;
      for (std::size_t i = 0; i < m; ++i) s += out.farkas[i] * lp.a[i][j];
      if (s < 0) throw Error(Module::Lp, ErrorKind::Internal, "Farkas certificate failed verification");
    }
    if (dot(out.farkas, lp.b) >= 0)
      throw Error(Module::Lp, ErrorKind::Internal, "Farkas certificate failed verification");
    return out;
  }

  // Drive remaining artificials (all at zero) out of the basis, dropping redundant rows.
  for (std::size_t i = 0; i < tab.row_count();) {
    if (tab.basic(i) < nvars) {
      ++i;
      continue;
    }
    std::size_t col = nvars;
    for (std::size_t j = 0; j < nvars; ++j)
      if (tab.at(i, j) != 0) {
        col = j;
        break;
      }
    if (col == nvars) {
      tab.drop_row(i);
    } else {
      tab.pivot(i, col, reduced);
      ++i;
    }
  }

  // Phase two.
  for (std::size_t j = 0; j < nvars + m; ++j) {
    reduced[j] = j < nvars ? lp.c[j] : Rational(0);
    for (std::size_t i = 0; i < tab.row_count(); ++i) reduced[j] -= lp.c[tab.basic(i)] * tab.at(i, j);
  }
  if (!tab.optimize(reduced, nvars)) {
    out.status = LpStatus::Unbounded;
    return out;
  }
  out.status = LpStatus::Optimal;
  out.x.assign(nvars, 0);
  for (std::size_t i = 0; i < tab.row_count(); ++i) out.x[tab.basic(i)] = tab.rhs(i);
  out.objective = dot(out.x, lp.c);
  return out;
}

}  // namespace parabolic
