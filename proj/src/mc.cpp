#include "bridgestop/mc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "bridgestop/freeboundary.hpp"

namespace bridgestop {

namespace detail {

int worker_count() {
    if (const char* env = std::getenv("BRIDGESTOP_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return std::min(n, 64);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(std::min(hw, 64u));
}

std::vector<std::vector<double>> rule_payoffs(const ModelParams& params,
                                              const CurveSpec& rule_curve,
                                              const std::vector<double>& scales, double x,
                                              double t, long long n_paths, int n_steps,
                                              std::uint64_t seed) {
    if (n_paths < 100) throw std::domain_error("mc: need n_paths >= 100");
    if (n_steps < 100) throw std::domain_error("mc: need n_steps >= 100");
    if (!(t >= 0.0 && t < 1.0)) throw std::domain_error("mc: need t in [0,1)");
    for (double c : scales) {
        if (!(c > 0.0)) throw std::domain_error("mc: rule scales must be > 0");
    }

    const auto grid = uniform_grid(t, 1.0, n_steps);
    const TransitionTable table(params, grid);
    const std::size_t n_scales = scales.size();

    // Barrier per scale per grid time: c * b(s) + gamma(1) of the rule curve.
    std::vector<std::vector<double>> barriers(n_scales,
                                              std::vector<double>(grid.size()));
    const double rule_g1 = rule_curve.gamma_final();
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double bj = rule_curve.b(grid[j]);
        for (std::size_t k = 0; k < n_scales; ++k) {
            barriers[k][j] = scales[k] * bj + rule_g1;
        }
    }

    std::vector<std::vector<double>> payoffs(n_scales,
                                             std::vector<double>(static_cast<std::size_t>(n_paths)));
    const double pinned = params.curve.gamma_final();

    auto run_chunk = [&](long long begin, long long end) {
        std::vector<char> live(n_scales);
        for (long long i = begin; i < end; ++i) {
            SplitStream rng(seed, static_cast<std::uint64_t>(i));
            double cur = x;
            std::size_t n_live = 0;
            for (std::size_t k = 0; k < n_scales; ++k) {
                if (cur >= barriers[k][0]) {
                    payoffs[k][static_cast<std::size_t>(i)] = cur;
                    live[k] = 0;
                } else {
                    live[k] = 1;
                    ++n_live;
                }
            }
            for (std::size_t j = 1; j < grid.size() && n_live > 0; ++j) {
                cur = table.step(cur, j - 1, rng.normal());
                for (std::size_t k = 0; k < n_scales; ++k) {
                    if (live[k] && cur >= barriers[k][j]) {
                        payoffs[k][static_cast<std::size_t>(i)] = cur;
                        live[k] = 0;
                        --n_live;
                    }
                }
            }
            // Rules that never crossed collect the pinned endpoint.
            for (std::size_t k = 0; k < n_scales; ++k) {
                if (live[k]) payoffs[k][static_cast<std::size_t>(i)] = pinned;
            }
        }
    };

    const int workers = std::min<long long>(worker_count(), n_paths);
    if (workers <= 1) {
        run_chunk(0, n_paths);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        const long long chunk = (n_paths + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            const long long begin = w * chunk;
            const long long end = std::min(n_paths, begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(run_chunk, begin, end);
        }
        for (auto& th : pool) th.join();
    }
    return payoffs;
}

}  // namespace detail

namespace {

McEstimate estimate_from(const std::vector<double>& payoffs, int n_steps, std::uint64_t seed) {
    const auto n = static_cast<long long>(payoffs.size());
    // Degenerate rules (immediate stop, never stop) produce one constant
    // payoff; report it without summation noise so mean = x and SE = 0 hold
    // exactly.
    bool constant = true;
    for (double p : payoffs) {
        if (p != payoffs.front()) {
            constant = false;
            break;
        }
    }
    if (constant) return {payoffs.front(), 0.0, n, n_steps, seed};

    double sum = 0.0;
    for (double p : payoffs) sum += p;
    const double mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (double p : payoffs) ss += (p - mean) * (p - mean);
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    return {mean, sd / std::sqrt(static_cast<double>(n)), n, n_steps, seed};
}

}  // namespace

McEstimate evaluate_rule(const ModelParams& params, const StoppingRule& rule, double x,
                         double t, long long n_paths, int n_steps, std::uint64_t seed) {
    const auto payoffs =
        detail::rule_payoffs(params, rule.curve, {rule.scale}, x, t, n_paths, n_steps, seed);
    return estimate_from(payoffs[0], n_steps, seed);
}

std::vector<ScanRow> optimality_scan(const ModelParams& params, double x, double t,
                                     const std::vector<double>& scales, long long n_paths,
                                     int n_steps, std::uint64_t seed) {
    const auto unit = std::find(scales.begin(), scales.end(), 1.0);
    if (unit == scales.end()) {
        throw std::domain_error("optimality_scan: scales must include 1.0");
    }
    const auto payoffs =
        detail::rule_payoffs(params, params.curve, scales, x, t, n_paths, n_steps, seed);
    const std::size_t unit_idx = static_cast<std::size_t>(unit - scales.begin());

    std::vector<ScanRow> rows;
    rows.reserve(scales.size());
    for (std::size_t k = 0; k < scales.size(); ++k) {
        ScanRow row{scales[k], estimate_from(payoffs[k], n_steps, seed), 0.0};
        if (k != unit_idx) {
            const auto n = static_cast<double>(n_paths);
            double dsum = 0.0;
            for (std::size_t i = 0; i < payoffs[k].size(); ++i) {
                dsum += payoffs[unit_idx][i] - payoffs[k][i];
            }
            const double dmean = dsum / n;
            double dss = 0.0;
            for (std::size_t i = 0; i < payoffs[k].size(); ++i) {
                const double d = payoffs[unit_idx][i] - payoffs[k][i] - dmean;
                dss += d * d;
            }
            row.paired_se_vs_unit = std::sqrt(dss / (n - 1.0)) / std::sqrt(n);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

VerifyReport verify_value(const ModelParams& params, double x, double t, long long n_paths,
                          int n_steps, std::uint64_t seed) {
    const double beta_opt = beta_of_alpha(params.alpha);
    if (std::abs(params.beta - beta_opt) > 1e-9 * (1.0 + beta_opt)) {
        throw std::domain_error(
            "verify_value: model beta must equal beta(alpha) for the closed form to apply");
    }
    const ValueContext ctx(params.alpha, params.beta, params.curve);
    const McEstimate est =
        evaluate_rule(params, {1.0, params.curve}, x, t, n_paths, n_steps, seed);

    VerifyReport rep;
    rep.mc = est;
    rep.analytic = ctx.value(x, t);
    const double diff = rep.analytic - est.mean;
    rep.z_score = (diff == 0.0) ? 0.0 : diff / est.std_error;
    const double dt = (1.0 - t) / n_steps;
    rep.bias_margin = 0.75 * params.curve.b(t) * std::sqrt(dt);
    rep.flagged = std::abs(diff) > 3.0 * est.std_error + rep.bias_margin;
    return rep;
}

void write_scan_csv(std::ostream& out, const std::vector<ScanRow>& rows) {
    out << "c,mean,std_error,n_paths,n_steps,seed\n";
    char buf[160];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%.12g,%lld,%d,%llu\n", r.scale,
                      r.estimate.mean, r.estimate.std_error, r.estimate.n_paths,
                      r.estimate.n_steps,
                      static_cast<unsigned long long>(r.estimate.seed));
        out << buf;
    }
}

}  // namespace bridgestop
