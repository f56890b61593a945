#pragma once

#include "parabolic/linalg.hpp"
#include "parabolic/rational.hpp"

namespace parabolic {

/// maximize c.x subject to A x = b, x >= 0, over the rationals.
struct LinearProgram {
  Matrix a;
  RationalVector b;
  RationalVector c;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  RationalVector x;        // primal point (Optimal only)
  Rational objective = 0;  // c.x (Optimal only)
  RationalVector farkas;   // y with y^T A >= 0 and y.b < 0 (Infeasible only)
};

/// Two-phase dense simplex with Bland's rule, so it terminates on degenerate
/// problems. All pivots are exact. Infeasibility comes with a verified Farkas
/// certificate read off the phase-one duals.
LpSolution solve(const LinearProgram& lp);

}  // namespace parabolic
