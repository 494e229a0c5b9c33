#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "bridgestop/process.hpp"
#include "bridgestop/valuefn.hpp"

namespace bridgestop {

/**
 * Barrier stopping rule: stop at the first monitored time s with
 * X_s >= scale * b(s) + gamma(1), both read from the rule's curve.
 * scale = 1 is the optimal rule.
 */
struct StoppingRule {
    double scale;
    CurveSpec curve;
};

struct McEstimate {
    double mean;
    double std_error;  // sample std / sqrt(n_paths)
    long long n_paths;
    int n_steps;
    std::uint64_t seed;
};

struct ScanRow {
    double scale;
    McEstimate estimate;
    /// Standard error of the per-path payoff difference against the
    /// scale = 1 rule on the same paths (0 for that rule itself).
    double paired_se_vs_unit;
};

struct VerifyReport {
    McEstimate mc;
    double analytic;
    double z_score;      // (analytic - mc.mean) / mc.std_error
    double bias_margin;  // discrete-monitoring allowance, documented below
    bool flagged;        // |analytic - mc.mean| > 3 SE + bias_margin
};

/**
 * Expected payoff of one stopping rule by exact-path Monte Carlo on a
 * uniform grid of n_steps from t to 1. Crossings are monitored at grid
 * times only; the payoff is the simulated value at the crossing point, or
 * the pinned endpoint gamma(1) when the barrier is never reached.
 * Requires n_paths >= 100, n_steps >= 100. Workers are capped by the
 * BRIDGESTOP_THREADS environment variable; results are bit-identical for a
 * given seed at any parallelism.
 */
McEstimate evaluate_rule(const ModelParams& params, const StoppingRule& rule, double x,
                         double t, long long n_paths, int n_steps, std::uint64_t seed);

/**
 * Evaluate one rule per scale on a common set of paths (common random
 * numbers: every rule sees the same trajectories, so the paired standard
 * errors are far sharper than the individual ones). scales must contain
 * 1.0, the rule the comparison is anchored to.
 */
std::vector<ScanRow> optimality_scan(const ModelParams& params, double x, double t,
                                     const std::vector<double>& scales, long long n_paths,
                                     int n_steps, std::uint64_t seed);

/**
 * Monte Carlo check of the analytic value at (x,t) with the scale = 1 rule.
 * The report is flagged when the gap exceeds 3 standard errors plus a
 * discrete-monitoring allowance of 0.75 b(t) sqrt(dt) (crossings between
 * grid times are missed, biasing the estimate down; the allowance is
 * ~0.01 at the canonical 4000-step resolution). Requires the model's beta
 * to equal beta(alpha), otherwise the closed form does not apply.
 */
VerifyReport verify_value(const ModelParams& params, double x, double t, long long n_paths,
                          int n_steps, std::uint64_t seed);

/// CSV export `c,mean,std_error,n_paths,n_steps,seed`.
void write_scan_csv(std::ostream& out, const std::vector<ScanRow>& rows);

namespace detail {

/// Per-path payoffs for every scale on common paths; payoffs[k][i] is the
/// payoff of scale k on path i. Exposed for tests that need the paths.
std::vector<std::vector<double>> rule_payoffs(const ModelParams& params,
                                              const CurveSpec& rule_curve,
                                              const std::vector<double>& scales, double x,
                                              double t, long long n_paths, int n_steps,
                                              std::uint64_t seed);

/// Worker cap: BRIDGESTOP_THREADS if set, hardware concurrency otherwise.
int worker_count();

}  // namespace detail

}  // namespace bridgestop
