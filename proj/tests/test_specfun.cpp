#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "bridgestop/specfun.hpp"
#include "test_support.hpp"

using namespace bridgestop;

namespace {

std::vector<double> grid(double lo, double hi, double step) {
    std::vector<double> g;
    for (double z = lo; z <= hi + 1e-12; z += step) g.push_back(z);
    return g;
}

}  // namespace

TEST_CASE("kummer_m basic values") {
    CHECK(kummer_m(0.7, 0.5, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
    // (a)_n/(b)_n == 1 when a == b, so M(a,a,z) = e^z.
    CHECK(kummer_m(0.5, 0.5, 2.0) == doctest::Approx(std::exp(2.0)).epsilon(1e-13));
    // M(1/2, 3/2, -x^2) = sqrt(pi) erf(x) / (2x) at x = 1.
    const double expected = std::sqrt(std::numbers::pi) * std::erf(1.0) / 2.0;
    CHECK(kummer_m(0.5, 1.5, -1.0) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("kummer_m direct-sum cross-check on the working regime") {
    // Independent brute-force summation with a fixed large term count.
    auto brute = [](double a, double b, double z) {
        long double sum = 1.0L, term = 1.0L;
        for (int n = 0; n < 500; ++n) {
            term *= (static_cast<long double>(a) + n) / (static_cast<long double>(b) + n) * z /
                    (n + 1);
            sum += term;
        }
        return static_cast<double>(sum);
    };
    for (double a : {0.3, 0.5, 1.25, 4.0}) {
        for (double b : {0.5, 1.5, 2.5}) {
            for (double z : {0.1, 1.0, 7.5, 30.0, 60.0}) {
                CHECK(kummer_m(a, b, z) == doctest::Approx(brute(a, b, z)).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("kummer_m domain and overflow errors") {
    CHECK_THROWS_AS(kummer_m(0.5, 0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(kummer_m(0.5, -2.0, 1.0), std::domain_error);
    CHECK_NOTHROW(kummer_m(0.5, -1.5, 1.0));  // negative non-integer b is fine
    CHECK_THROWS_AS(kummer_m(2.0, 0.5, 1e4), std::overflow_error);
}

TEST_CASE("log_gamma values and domain") {
    CHECK(log_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(log_gamma(0.5) == doctest::Approx(0.5 * std::log(std::numbers::pi)).epsilon(1e-14));
    // Recurrence from Gamma(1/2): Gamma(2.5) = 1.5 * 0.5 * sqrt(pi).
    const double expected = std::log(1.5) + std::log(0.5) + 0.5 * std::log(std::numbers::pi);
    CHECK(log_gamma(2.5) == doctest::Approx(expected).epsilon(1e-13));
    CHECK_THROWS_AS(log_gamma(0.0), std::domain_error);
    CHECK_THROWS_AS(log_gamma(-1.5), std::domain_error);
}

TEST_CASE("context rejects alpha = 0") {
    CHECK_THROWS_AS(SpecialFnContext(0.0), std::domain_error);
    CHECK_THROWS_AS(SpecialFnContext(-1.0), std::domain_error);
    const SpecialFnContext ctx(2.0);
    CHECK(ctx.xi() == doctest::Approx(0.125).epsilon(1e-15));
}

TEST_CASE("h1 equals the Mills ratio at alpha = 1") {
    const SpecialFnContext ctx(1.0);
    CHECK(h1(ctx, 0.0) == doctest::Approx(std::sqrt(std::numbers::pi / 2.0)).epsilon(1e-12));
    CHECK(h1(ctx, 1.0) == doctest::Approx(testsup::mills_ratio(1.0)).epsilon(1e-12));
    CHECK(h1(ctx, 1.0) == doctest::Approx(0.6556795).epsilon(1e-6));
    CHECK(h1(ctx, -0.839924) == doctest::Approx(testsup::mills_ratio(-0.839924)).epsilon(1e-12));
    // Frozen from the erfc oracle (confirmed to 30 digits with mpmath).
    CHECK(h1(ctx, -0.839924) == doctest::Approx(2.8517606999).epsilon(1e-9));

    double worst = 0.0;
    for (double z : grid(-0.9, 6.0, 0.01)) {
        worst = std::max(worst, std::abs(h1(ctx, z) - testsup::mills_ratio(z)));
    }
    CHECK(worst <= 1e-9);
}

TEST_CASE("h1_prime via the Mills-ratio identity R'(z) = z R(z) - 1") {
    const SpecialFnContext ctx(1.0);
    CHECK(h1_prime(ctx, 0.0) == doctest::Approx(-1.0).epsilon(1e-12));
    const double r1 = testsup::mills_ratio(1.0);
    CHECK(h1_prime(ctx, 1.0) == doctest::Approx(1.0 * r1 - 1.0).epsilon(1e-11));
    CHECK(h1_prime(ctx, 1.0) == doctest::Approx(-0.3443205).epsilon(1e-6));
}

TEST_CASE("h1_prime matches central differences") {
    const double h = 1e-5;
    for (double alpha : {0.5, 1.0, 2.0}) {
        const SpecialFnContext ctx(alpha);
        for (double z : {-0.5, 0.0, 1.0, 3.0}) {
            const double fd = (h1(ctx, z + h) - h1(ctx, z - h)) / (2.0 * h);
            CHECK(std::abs(h1_prime(ctx, z) - fd) <= 1e-6);
        }
    }
}

TEST_CASE("h1 satisfies its source ODE h1'' = 2 xi h1 + z h1'") {
    // Equivalently H(x) = h1(alpha x) solves H'' = H + alpha^2 x H', the
    // form the reduction starts from. Second derivative by central
    // differences. A 1/h^2 stencil amplifies per-point evaluation noise, so
    // all three points go through one route: the series where it is
    // cancellation-free (z <= 2) with a step balancing truncation against
    // rounding, the integral beyond with a wider step matching its
    // quadrature tolerance.
    auto stencil = [](double xi, double z, double* h_out) {
        if (z <= 2.0) {
            const double h = 2.5e-4;
            try {
                std::array<double, 3> f = {std::exp(detail::log_h1_series(xi, z - h)),
                                           std::exp(detail::log_h1_series(xi, z)),
                                           std::exp(detail::log_h1_series(xi, z + h))};
                *h_out = h;
                return f;
            } catch (const precision_error&) {
                // large xi loses the series early; fall through (z > 0 there)
            }
        }
        const double h = 1e-3;
        *h_out = h;
        return std::array<double, 3>{std::exp(detail::log_h1_integral(xi, z - h)),
                                     std::exp(detail::log_h1_integral(xi, z)),
                                     std::exp(detail::log_h1_integral(xi, z + h))};
    };
    for (double alpha : {0.25, 0.5, 1.0, 2.0}) {
        const SpecialFnContext ctx(alpha);
        const double xi = ctx.xi();
        for (double z : grid(-alpha * 1.05 + 1e-3, 6.0, 0.0503)) {
            double h = 0.0;
            const auto [fm, f0, fp] = stencil(xi, z, &h);
            const double fpp = (fp - 2.0 * f0 + fm) / (h * h);
            const double resid = fpp - 2.0 * xi * f0 - z * h1_prime(ctx, z);
            CHECK(std::abs(resid) <= 1e-6 * (1.0 + std::abs(2.0 * xi * f0)));
        }
    }
}

TEST_CASE("h1 positive and strictly decreasing on the working domain") {
    for (double alpha : {0.25, 0.5, 1.0, 2.0, 4.0}) {
        const SpecialFnContext ctx(alpha);
        double prev = std::numeric_limits<double>::infinity();
        for (double z : grid(-alpha * 1.05, 8.0, 0.1)) {
            const double v = h1(ctx, z);
            CHECK(v > 0.0);
            CHECK(v < prev);
            CHECK(h1_prime(ctx, z) < 0.0);
            prev = v;
        }
    }
}

TEST_CASE("asymptotic normalization h1(z) z^(2 xi) -> 1") {
    for (double xi : {0.5, 1.0, 2.0}) {
        const double alpha = std::sqrt(1.0 / (2.0 * xi));
        const SpecialFnContext ctx(alpha);
        const double scaled = h1(ctx, 20.0) * std::pow(20.0, 2.0 * xi);
        CHECK(scaled >= 0.95);
        CHECK(scaled <= 1.05);
    }
}

TEST_CASE("integral representation validated against the series") {
    // Correctness gate for the integral route: it must reproduce the series
    // wherever the series itself is certified. The bar is 1e-10 away from
    // the cancellation-heavy corner, the 1e-9 evaluation contract near it.
    for (double xi : {0.5, 1.0, 2.0}) {
        for (double z : grid(-1.0, 4.0, 0.05)) {
            double ls;
            try {
                ls = detail::log_h1_series(xi, z);
            } catch (const precision_error&) {
                continue;  // series certificate failed; integral is the route there
            }
            const double li = detail::log_h1_integral(xi, z);
            const double tol = (z <= 2.5) ? 1e-10 : 1e-9;
            CHECK(std::abs(std::expm1(ls - li)) <= tol);
        }
    }
    // The series must actually cover the bulk of the range (the certified
    // reach shrinks as xi grows; xi = 2 hands off near z = 1.5).
    for (double xi : {0.5, 1.0}) {
        for (double z : grid(-1.0, 2.5, 0.25)) {
            CHECK_NOTHROW(detail::log_h1_series(xi, z));
        }
    }
    for (double z : grid(-1.0, 1.2, 0.2)) {
        CHECK_NOTHROW(detail::log_h1_series(2.0, z));
    }
}

TEST_CASE("asymptotic branch is continuous with the integral at z = 50") {
    for (double xi : {0.5, 1.0, 2.0}) {
        const double li = detail::log_h1_integral(xi, 49.99);
        const double la = detail::log_h1_asymptotic(xi, 50.01);
        const double slope = -2.0 * xi / 50.0;  // d log h1 / dz, leading order
        // Gap bounded by the first dropped asymptotic term,
        // ~ (2xi)(2xi+1)(2xi+2)(2xi+3)/(8 z^4) = 1.7e-5 at xi = 2.
        CHECK(std::abs((la - li) - slope * 0.02) <= 1e-4);
    }
}

TEST_CASE("log_h1 stays finite where h1 itself leaves the double range") {
    // xi = 200 (alpha = 0.05): h1 underflows but the log form must work.
    const SpecialFnContext ctx(0.05);
    const double lg = log_h1(ctx, -0.05);
    CHECK(std::isfinite(lg));
    CHECK_THROWS_AS(h1(ctx, -0.05), precision_error);
    // Log-derivative also finite and negative.
    CHECK(h1_log_derivative(ctx, -0.05) < 0.0);
}
