#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "bridgestop/curves.hpp"
#include "bridgestop/rng.hpp"

namespace bridgestop {

/**
 * Parameters of the pinned process
 *   dX = (1+alpha^2)(X - gamma(1)) b'(s)/b(s) ds + sqrt(-2 b'(s) b(s)/beta^2) dB,
 * the finite-horizon image of a mean-reverting OU process with
 * theta = alpha^2 and sigma = sqrt(2/beta^2).
 */
struct ModelParams {
    double alpha;
    double beta;
    CurveSpec curve;

    double theta() const { return alpha * alpha; }
    double sigma() const { return std::sqrt(2.0 / (beta * beta)); }
};

/// A sampled path: strictly increasing times with matching values; when the
/// grid reaches 1 the final value is the pinned endpoint gamma(1), exactly.
struct PathGrid {
    std::vector<double> times;
    std::vector<double> values;
};

struct MeanVar {
    double mean;
    double variance;
};

/**
 * Closed-form conditional mean and variance of X_s given X_t = x:
 *   mean = gamma(1) + (x - gamma(1)) r^(1+alpha^2),        r = b(s)/b(t)
 *   var  = (b(s)/beta)^2 (1 - r^(2 alpha^2)) / alpha^2     (alpha != 0)
 *          (b(s)/beta)^2 (-2 ln r)                         (alpha == 0)
 * Requires 0 <= t <= s <= 1 and t < 1.
 */
MeanVar mean_var(const ModelParams& params, double x, double t, double s);

/// One exact Gaussian transition draw; degenerate cases (s = t, s = 1)
/// return the mean deterministically.
double sample_transition(const ModelParams& params, double x, double t, double s,
                         SplitStream& rng);

/// Exact path over the given grid (starts at t, strictly increasing, ends
/// at 1) by chaining transitions; no discretization bias at any step size.
PathGrid simulate_path(const ModelParams& params, double x, double t,
                       std::span<const double> grid, SplitStream& rng);

/**
 * Euler-Maruyama sampler for the same SDE, kept as an independent
 * discretization cross-check. t_end must stay below 1 - 1e-3 because the
 * diffusion coefficient can blow up at the pinning time. diffusion_scale
 * rescales the noise term (0 gives the deterministic drift flow).
 */
PathGrid euler_path(const ModelParams& params, double x, double t, int n_steps, double t_end,
                    SplitStream& rng, double diffusion_scale = 1.0);

/// n_steps + 1 equally spaced times from t0 to t1, endpoints exact.
std::vector<double> uniform_grid(double t0, double t1, int n_steps);

/**
 * Precomputed per-interval transition coefficients for one time grid:
 * stepping costs one normal draw plus two fused multiplies. Both
 * simulate_path and the Monte Carlo evaluator run on this, so they produce
 * bit-identical paths for the same stream.
 */
class TransitionTable {
  public:
    TransitionTable(const ModelParams& params, std::span<const double> grid);

    std::size_t n_steps() const { return pull_.size(); }
    double time(std::size_t i) const { return times_[i]; }
    double barrier_offset(std::size_t i) const { return b_[i]; }
    double gamma_final() const { return gamma_final_; }

    double step(double x, std::size_t i, double normal_draw) const {
        return gamma_final_ + (x - gamma_final_) * pull_[i] + sd_[i] * normal_draw;
    }

  private:
    std::vector<double> times_;
    std::vector<double> b_;     // b(s) at each grid time
    std::vector<double> pull_;  // r^(1+alpha^2) per interval
    std::vector<double> sd_;    // sqrt of the transition variance
    double gamma_final_;
};

/// Write paths as CSV `path_id,t,x`.
void write_paths_csv(std::ostream& out, std::span<const PathGrid> paths);

}  // namespace bridgestop
