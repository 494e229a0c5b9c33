#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "bridgestop/curves.hpp"

namespace bridgestop {

/**
 * Solution of the smooth-fit constraint x h1'(x) = h1(x): the unique
 * negative root x_alpha, the barrier constant beta = -x_alpha/alpha and the
 * residual of the constraint at the returned root.
 */
struct BoundarySolution {
    double alpha;
    double x_alpha;
    double beta;
    double residual;                    // x h1'(x) - h1(x) at the root
    std::pair<double, double> bracket;  // initial sign-change bracket
};

/**
 * Find the unique x_alpha < 0 with x h1'(x) = h1(x) for alpha > 0.
 * The bracket starts just left of zero (where the constraint is negative)
 * and expands geometrically from -0.25 until the sign flips, then
 * bisection with a secant accelerant polishes the root. Supported range
 * alpha in (0, 8]; larger alpha is rejected.
 */
BoundarySolution solve_x_alpha(double alpha);

/// beta(alpha): exactly 1 at alpha = 0, otherwise -x_alpha/alpha.
double beta_of_alpha(double alpha);

/// Optimal stopping barrier gamma(t) = b(t) + gamma(1).
double barrier(double alpha, const CurveSpec& curve, double t);

struct BetaSweepRow {
    double alpha;
    double beta;
    double x_alpha;
    double residual;
};

/// beta(alpha) on a uniform alpha grid; each solve is independent.
std::vector<BetaSweepRow> beta_sweep(double alpha_min, double alpha_max, int points);

/// CSV export `alpha,beta,x_alpha,residual`.
void write_beta_sweep_csv(std::ostream& out, const std::vector<BetaSweepRow>& rows);

}  // namespace bridgestop
