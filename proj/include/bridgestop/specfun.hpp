#pragma once

#include <stdexcept>

namespace bridgestop {

/// Raised when an evaluation cannot certify its accuracy contract.
class precision_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/**
 * Kummer confluent hypergeometric function M(a,b,z) = sum_n (a)_n/(b)_n z^n/n!.
 *
 * Accurate to ~1e-13 relative for a,b > 0 and 0 <= z <= 60 (positive-term
 * series, no cancellation). Throws std::domain_error if b is zero or a
 * negative integer, std::overflow_error if a term leaves the double range.
 */
double kummer_m(double a, double b, double z);

/// ln Gamma(x) for x > 0. Throws std::domain_error otherwise.
double log_gamma(double x);

/**
 * Evaluation context for the decaying solution h1 of
 *   h1''(z) = 2*xi*h1(z) + z*h1'(z),   xi = 1/(2*alpha^2),
 * assembled from Kummer functions. alpha = 0 has no special-function
 * representation (the limit is handled in closed form elsewhere) and is
 * rejected here.
 */
class SpecialFnContext {
  public:
    explicit SpecialFnContext(double alpha);

    double alpha() const { return alpha_; }
    double xi() const { return xi_; }

  private:
    double alpha_;
    double xi_;
};

/**
 * h1(z), positive and strictly decreasing on the domain used by the
 * stopping problem, with h1(z)*z^(2 xi) -> 1 as z -> +inf.
 *
 * Evaluation strategy: direct Kummer series where it is cancellation-safe
 * (all z <= 0, and z in (0,4] while the two terms cancel no more than a few
 * digits), the integral representation
 *   h1(z) = 1/Gamma(2 xi) * int_0^inf t^(2 xi - 1) exp(-t^2/2 - z t) dt
 * for larger positive z up to 50, and the two-term asymptotic
 *   z^(-2 xi) * (1 - 2 xi (2 xi + 1) / (2 z^2))
 * beyond 50 (second term = error bound).
 */
double h1(const SpecialFnContext& ctx, double z);

/// dh1/dz, negative on the required domain.
double h1_prime(const SpecialFnContext& ctx, double z);

/// ln h1(z). Stable for parameter ranges where h1 itself leaves the
/// double range (large xi).
double log_h1(const SpecialFnContext& ctx, double z);

/// h1'(z)/h1(z), the logarithmic derivative. Stable like log_h1.
double h1_log_derivative(const SpecialFnContext& ctx, double z);

namespace detail {

// Individual evaluation routes, exposed for cross-validation in tests.
// All return ln h1(z) for the exact normalization above.
double log_h1_series(double xi, double z);
double log_h1_integral(double xi, double z);
double log_h1_asymptotic(double xi, double z);

// Route selection used by the public functions.
double log_h1_impl(double xi, double z);
double h1_log_derivative_impl(double xi, double z);

}  // namespace detail

}  // namespace bridgestop
