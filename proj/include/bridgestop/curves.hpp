#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bridgestop {

enum class CurveFamily { Sqrt, Power, Linear, Tabulated };

/**
 * Investor-view curve gamma(t) on [0,1] through its bridge offset
 * b(t) = gamma(t) - gamma(1): positive and strictly decreasing on [0,1),
 * b(1) = 0, C^1 on [0,1).
 *
 * Built-in families (scale c > 0):
 *   sqrt    b(t) = c sqrt(1-t)
 *   power   b(t) = c (1-t)^p,  p > 0
 *   linear  b(t) = c (1-t)
 * Tabulated curves interpolate (t, gamma) breakpoints with a
 * monotonicity-preserving piecewise cubic; the data must start at t = 0 and
 * end at t = 1 (so b(1) = 0 holds exactly, never by extrapolation).
 */
class CurveSpec {
  public:
    static CurveSpec sqrt_family(double scale, double gamma_final);
    static CurveSpec power_family(double scale, double exponent, double gamma_final);
    static CurveSpec linear_family(double scale, double gamma_final);
    static CurveSpec tabulated(std::vector<double> t, std::vector<double> gamma);

    /// Parse a `t,gamma` CSV (header required, strictly increasing t from 0
    /// to 1, strictly decreasing gamma). gamma(1) is read from the last row.
    static CurveSpec from_csv(const std::string& path);
    static CurveSpec from_csv_stream(std::istream& in, const std::string& name);

    /// b(t) = gamma(t) - gamma(1); t must lie in [0,1].
    double b(double t) const;

    /// b'(t) < 0. Throws std::domain_error at t = 1 when the family has an
    /// unbounded endpoint derivative (sqrt, power with p < 1).
    double b_prime(double t) const;

    double gamma(double t) const { return b(t) + gamma_final_; }
    double gamma_final() const { return gamma_final_; }
    CurveFamily family() const { return family_; }

    /// Checks positivity, strict decrease (1000-point grid) and b(1) = 0
    /// within 1e-12; returns human-readable violations, empty when valid.
    std::vector<std::string> validate() const;

  private:
    CurveSpec() = default;

    CurveFamily family_ = CurveFamily::Sqrt;
    double scale_ = 1.0;
    double exponent_ = 0.5;
    double gamma_final_ = 0.0;

    // Tabulated data: breakpoints of b(t) with endpoint b(1) = 0, plus
    // shape-preserving tangents.
    std::vector<double> knots_t_;
    std::vector<double> knots_b_;
    std::vector<double> tangents_;
};

}  // namespace bridgestop
