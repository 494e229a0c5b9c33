#pragma once

#include <iosfwd>
#include <optional>
#include <span>

#include "bridgestop/curves.hpp"
#include "bridgestop/specfun.hpp"

namespace bridgestop {

/**
 * Closed-form value function of the stopping problem.
 *
 * The reduced solution in the similarity variable y = (x - gamma(1))/b(t):
 *   f(y) = h1(-alpha beta y) / h1(-alpha beta)   (alpha > 0, y < 1)
 *   f(y) = exp(y - 1)                            (alpha = 0, y < 1)
 *   f(y) = y                                     (y >= 1, stopped)
 * and the full surface
 *   V(x,t) = gamma(1) + f((x - gamma(1))/b(t)) b(t)  for x < gamma(t),
 *   V(x,t) = x                                       for x >= gamma(t).
 */
class ValueContext {
  public:
    /// beta is solved from alpha; the h1 normalization at -alpha beta is
    /// cached. alpha = 0 uses the exponential closed form throughout.
    ValueContext(double alpha, CurveSpec curve);

    /// Overrides beta (experiments only; the value formula is the optimal
    /// one only at beta = beta(alpha)).
    ValueContext(double alpha, double beta_override, CurveSpec curve);

    double f_reduced(double y) const;

    /// df/dy. Equals 1 on [1, inf) and approaches 1 from the left by the
    /// smooth-fit construction.
    double f_reduced_prime(double y) const;

    /// V*(x,t). t = 1 returns the pinned value by continuity: x in the
    /// stopped branch, gamma(1) otherwise.
    double value(double x, double t) const;

    /// True iff (x,t) lies in the stopping region x >= gamma(t).
    bool stop_region(double x, double t) const;

    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    const CurveSpec& curve() const { return curve_; }

  private:
    double alpha_;
    double beta_;
    CurveSpec curve_;
    std::optional<SpecialFnContext> specfun_;  // engaged for alpha > 0
    double log_norm_ = 0.0;                    // log h1(-alpha beta)
};

/// CSV export `x,t,value,region` over the product grid xs x ts.
void write_value_surface_csv(std::ostream& out, const ValueContext& ctx,
                             std::span<const double> xs, std::span<const double> ts);

}  // namespace bridgestop
