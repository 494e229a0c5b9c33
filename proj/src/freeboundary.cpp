#include "bridgestop/freeboundary.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "bridgestop/specfun.hpp"

namespace bridgestop {

namespace {

// Scale-free form of the constraint: x h1'(x)/h1(x) - 1 shares the sign and
// the root of x h1'(x) - h1(x) (h1 > 0) and stays representable even where
// h1 itself leaves the double range.
double constraint(const SpecialFnContext& ctx, double x) {
    return x * h1_log_derivative(ctx, x) - 1.0;
}

}  // namespace

BoundarySolution solve_x_alpha(double alpha) {
    if (!(alpha > 0.0)) {
        throw std::domain_error("solve_x_alpha: requires alpha > 0");
    }
    if (alpha > 8.0) {
        throw std::domain_error("solve_x_alpha: alpha > 8 unsupported (xi < 1/128)");
    }
    const SpecialFnContext ctx(alpha);

    // G(0-) = -1 < 0; expand the left endpoint until the sign flips. The
    // flip is guaranteed because h1(x)/x has its single critical point at
    // the root and diverges on both ends.
    double hi = -1e-6 * alpha;
    double lo = -0.25;
    double g_lo = constraint(ctx, lo);
    int doublings = 0;
    while (g_lo < 0.0) {
        if (++doublings > 60) {
            throw precision_error(
                "solve_x_alpha: no sign change after 60 bracket doublings "
                "(special-function accuracy fault)");
        }
        hi = lo;
        lo *= 2.0;
        g_lo = constraint(ctx, lo);
    }
    const std::pair<double, double> bracket{lo, hi};

    // Bisection with a secant accelerant; the bracket invariant
    // G(lo) >= 0 > G(hi) is maintained throughout.
    double g_hi = constraint(ctx, hi);
    double x = 0.5 * (lo + hi);
    for (int iter = 0; iter < 200 && hi - lo > 1e-13; ++iter) {
        double cand = 0.5 * (lo + hi);
        if (g_lo != g_hi) {
            const double secant = hi - g_hi * (hi - lo) / (g_hi - g_lo);
            const double margin = 0.05 * (hi - lo);
            if (secant > lo + margin && secant < hi - margin) cand = secant;
        }
        const double g_cand = constraint(ctx, cand);
        if (g_cand >= 0.0) {
            lo = cand;
            g_lo = g_cand;
        } else {
            hi = cand;
            g_hi = g_cand;
        }
        x = 0.5 * (lo + hi);
    }

    BoundarySolution sol;
    sol.alpha = alpha;
    sol.x_alpha = x;
    sol.beta = -x / alpha;
    sol.residual = std::exp(log_h1(ctx, x)) * constraint(ctx, x);
    sol.bracket = bracket;
    return sol;
}

double beta_of_alpha(double alpha) {
    if (alpha < 0.0) {
        throw std::domain_error("beta_of_alpha: requires alpha >= 0");
    }
    if (alpha == 0.0) return 1.0;
    return solve_x_alpha(alpha).beta;
}

double barrier(double alpha, const CurveSpec& curve, double t) {
    (void)alpha;  // the optimal barrier is the view curve itself, a(t) = b(t)
    return curve.gamma(t);
}

std::vector<BetaSweepRow> beta_sweep(double alpha_min, double alpha_max, int points) {
    if (points < 1 || !(alpha_min > 0.0) || !(alpha_max >= alpha_min)) {
        throw std::invalid_argument("beta_sweep: need points >= 1 and 0 < alpha_min <= alpha_max");
    }
    std::vector<BetaSweepRow> rows;
    rows.reserve(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        const double a = (points == 1)
                             ? alpha_min
                             : alpha_min + (alpha_max - alpha_min) * i / (points - 1);
        const BoundarySolution sol = solve_x_alpha(a);
        rows.push_back({sol.alpha, sol.beta, sol.x_alpha, sol.residual});
    }
    return rows;
}

void write_beta_sweep_csv(std::ostream& out, const std::vector<BetaSweepRow>& rows) {
    out << "alpha,beta,x_alpha,residual\n";
    char buf[128];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%.12g,%.3e\n", r.alpha, r.beta, r.x_alpha,
                      r.residual);
        out << buf;
    }
}

}  // namespace bridgestop
