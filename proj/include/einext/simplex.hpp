#pragma once

#include "einext/rational.hpp"

namespace einext {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  RationalVector x;        // primal solution when optimal
  Rational objective;      // c^T x when optimal
  RationalVector farkas;   // y with A^T y >= 0 and b^T y < 0 when infeasible
};

/*
 * minimize c^T x  subject to  A x = b, x >= 0
 *
 * Dense two-phase tableau simplex in exact rational arithmetic. Bland's
 * rule is used for both entering and leaving variables, so the method
 * terminates on degenerate problems. Infeasibility comes with a Farkas
 * certificate read off the phase-one multipliers.
 */
LpResult solve_lp(const RationalMatrix& a, const RationalVector& b, const RationalVector& c);

}  // namespace einext
