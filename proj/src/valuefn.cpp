#include "bridgestop/valuefn.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "bridgestop/freeboundary.hpp"

namespace bridgestop {

ValueContext::ValueContext(double alpha, CurveSpec curve)
    : ValueContext(alpha, beta_of_alpha(alpha), std::move(curve)) {}

ValueContext::ValueContext(double alpha, double beta_override, CurveSpec curve)
    : alpha_(alpha), beta_(beta_override), curve_(std::move(curve)) {
    if (alpha < 0.0) throw std::domain_error("ValueContext: requires alpha >= 0");
    if (!(beta_ > 0.0)) throw std::domain_error("ValueContext: requires beta > 0");
    if (alpha > 0.0) {
        specfun_.emplace(alpha);
        log_norm_ = log_h1(*specfun_, -alpha_ * beta_);
    }
}

double ValueContext::f_reduced(double y) const {
    if (!std::isfinite(y)) throw std::domain_error("f_reduced: y must be finite");
    if (y >= 1.0) return y;  // stopped region continuation f(y) = y
    if (alpha_ == 0.0) return std::exp(y - 1.0);
    return std::exp(log_h1(*specfun_, -alpha_ * beta_ * y) - log_norm_);
}

double ValueContext::f_reduced_prime(double y) const {
    if (!std::isfinite(y)) throw std::domain_error("f_reduced_prime: y must be finite");
    if (y >= 1.0) return 1.0;
    if (alpha_ == 0.0) return std::exp(y - 1.0);
    // d/dy h1(-alpha beta y) = -alpha beta h1'(z), via the log-derivative to
    // stay stable wherever f itself is.
    const double z = -alpha_ * beta_ * y;
    return -alpha_ * beta_ * h1_log_derivative(*specfun_, z) * f_reduced(y);
}

double ValueContext::value(double x, double t) const {
    if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("value: t must lie in [0,1]");
    const double g1 = curve_.gamma_final();
    if (x >= curve_.gamma(t)) return x;
    if (t == 1.0) return g1;  // pinned endpoint, by continuity
    const double bt = curve_.b(t);
    return g1 + f_reduced((x - g1) / bt) * bt;
}

bool ValueContext::stop_region(double x, double t) const {
    if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("stop_region: t must lie in [0,1]");
    return x >= curve_.gamma(t);
}

void write_value_surface_csv(std::ostream& out, const ValueContext& ctx,
                             std::span<const double> xs, std::span<const double> ts) {
    out << "x,t,value,region\n";
    char buf[128];
    for (double t : ts) {
        for (double x : xs) {
            std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%.12g,%s\n", x, t, ctx.value(x, t),
                          ctx.stop_region(x, t) ? "stop" : "continue");
            out << buf;
        }
    }
}

}  // namespace bridgestop
