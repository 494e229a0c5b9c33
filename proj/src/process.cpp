#include "bridgestop/process.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace bridgestop {

namespace {

void check_times(double t, double s) {
    if (!(t >= 0.0 && s >= t && s <= 1.0)) {
        throw std::domain_error("process: need 0 <= t <= s <= 1");
    }
    if (t >= 1.0) {
        throw std::domain_error("process: transition start t must satisfy t < 1");
    }
}

}  // namespace

MeanVar mean_var(const ModelParams& params, double x, double t, double s) {
    check_times(t, s);
    if (s == t) return {x, 0.0};
    const double g1 = params.curve.gamma_final();
    if (s == 1.0) return {g1, 0.0};

    const double bt = params.curve.b(t);
    const double bs = params.curve.b(s);
    const double r = bs / bt;
    const double a2 = params.alpha * params.alpha;
    const double mean = g1 + (x - g1) * std::pow(r, 1.0 + a2);
    const double scale = (bs / params.beta) * (bs / params.beta);
    // -expm1 keeps the alpha -> 0 limit continuous: (1 - r^(2 a^2))/a^2
    // tends to -2 ln r without cancellation.
    const double var = (a2 == 0.0) ? scale * (-2.0 * std::log(r))
                                   : scale * (-std::expm1(2.0 * a2 * std::log(r))) / a2;
    return {mean, var};
}

double sample_transition(const ModelParams& params, double x, double t, double s,
                         SplitStream& rng) {
    const MeanVar mv = mean_var(params, x, t, s);
    if (mv.variance == 0.0) return mv.mean;
    return mv.mean + std::sqrt(mv.variance) * rng.normal();
}

TransitionTable::TransitionTable(const ModelParams& params, std::span<const double> grid)
    : gamma_final_(params.curve.gamma_final()) {
    if (grid.size() < 2) {
        throw std::invalid_argument("TransitionTable: grid needs at least two times");
    }
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        if (!(grid[i] < grid[i + 1])) {
            throw std::invalid_argument("TransitionTable: grid must be strictly increasing");
        }
    }
    times_.assign(grid.begin(), grid.end());
    b_.resize(times_.size());
    for (std::size_t i = 0; i < times_.size(); ++i) b_[i] = params.curve.b(times_[i]);

    const std::size_t n = times_.size() - 1;
    pull_.resize(n);
    sd_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const MeanVar mv = mean_var(params, 1.0 + gamma_final_, times_[i], times_[i + 1]);
        pull_[i] = mv.mean - gamma_final_;  // r^(1+alpha^2) via the unit offset
        sd_[i] = std::sqrt(mv.variance);
    }
}

PathGrid simulate_path(const ModelParams& params, double x, double t,
                       std::span<const double> grid, SplitStream& rng) {
    if (grid.empty() || grid.front() != t) {
        throw std::invalid_argument("simulate_path: grid must start at t");
    }
    if (grid.back() != 1.0) {
        throw std::invalid_argument("simulate_path: grid must end at 1");
    }
    const TransitionTable table(params, grid);
    PathGrid path;
    path.times.assign(grid.begin(), grid.end());
    path.values.resize(grid.size());
    path.values[0] = x;
    double cur = x;
    for (std::size_t i = 0; i < table.n_steps(); ++i) {
        cur = table.step(cur, i, rng.normal());
        path.values[i + 1] = cur;
    }
    return path;
}

PathGrid euler_path(const ModelParams& params, double x, double t, int n_steps, double t_end,
                    SplitStream& rng, double diffusion_scale) {
    if (!(t >= 0.0 && t < t_end)) {
        throw std::domain_error("euler_path: need 0 <= t < t_end");
    }
    if (t_end > 1.0 - 1e-3) {
        throw std::domain_error(
            "euler_path: t_end must stay <= 1 - 1e-3 (diffusion can be singular at 1)");
    }
    if (n_steps < 1) {
        throw std::invalid_argument("euler_path: need n_steps >= 1");
    }
    const double g1 = params.curve.gamma_final();
    const double a2 = params.alpha * params.alpha;
    const double beta2 = params.beta * params.beta;

    PathGrid path;
    path.times = uniform_grid(t, t_end, n_steps);
    path.values.resize(path.times.size());
    path.values[0] = x;
    double cur = x;
    for (int i = 0; i < n_steps; ++i) {
        const double s = path.times[i];
        const double ds = path.times[i + 1] - path.times[i];
        const double bs = params.curve.b(s);
        const double bps = params.curve.b_prime(s);
        const double drift = (1.0 + a2) * (cur - g1) * bps / bs;
        const double diff2 = -2.0 * bps * bs / beta2;
        cur += drift * ds +
               diffusion_scale * std::sqrt(std::max(diff2, 0.0) * ds) * rng.normal();
        path.values[i + 1] = cur;
    }
    return path;
}

std::vector<double> uniform_grid(double t0, double t1, int n_steps) {
    if (n_steps < 1 || !(t0 < t1)) {
        throw std::invalid_argument("uniform_grid: need n_steps >= 1 and t0 < t1");
    }
    std::vector<double> g(static_cast<std::size_t>(n_steps) + 1);
    for (int i = 0; i <= n_steps; ++i) {
        g[static_cast<std::size_t>(i)] = t0 + (t1 - t0) * static_cast<double>(i) / n_steps;
    }
    g.front() = t0;
    g.back() = t1;
    return g;
}

void write_paths_csv(std::ostream& out, std::span<const PathGrid> paths) {
    out << "path_id,t,x\n";
    char buf[64];
    for (std::size_t p = 0; p < paths.size(); ++p) {
        for (std::size_t i = 0; i < paths[p].times.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%zu,%.12g,%.12g\n", p, paths[p].times[i],
                          paths[p].values[i]);
            out << buf;
        }
    }
}

}  // namespace bridgestop
