// bridgestop: solver and simulator for optimal stopping of pinned
// bridge-type processes. Subcommands: beta, value, paths, verify.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bridgestop/freeboundary.hpp"
#include "bridgestop/mc.hpp"
#include "bridgestop/process.hpp"
#include "bridgestop/svg.hpp"
#include "bridgestop/valuefn.hpp"

using ordered_json = nlohmann::ordered_json;
using namespace bridgestop;

namespace {

struct CurveOptions {
    std::string kind = "sqrt";
    double scale = 0.0;  // 0 = not given; defaults to beta(alpha)
    double exponent = 1.0;
    std::string file;
    double gamma_final = 0.0;
};

void add_curve_flags(CLI::App* cmd, CurveOptions& opt) {
    cmd->add_option("--curve", opt.kind, "Curve family: sqrt|power|linear|file")
        ->check(CLI::IsMember({"sqrt", "power", "linear", "file"}))
        ->capture_default_str();
    cmd->add_option("--curve-scale", opt.scale,
                    "Family scale c > 0 (default: beta(alpha))");
    cmd->add_option("--curve-exp", opt.exponent, "Power-family exponent p > 0")
        ->capture_default_str();
    cmd->add_option("--curve-file", opt.file, "CSV file `t,gamma` for --curve file");
    cmd->add_option("--gamma-final", opt.gamma_final, "Final value gamma(1)")
        ->capture_default_str();
}

CurveSpec build_curve(const CurveOptions& opt, double alpha) {
    if (opt.kind == "file") {
        if (opt.file.empty()) {
            throw std::invalid_argument("--curve file requires --curve-file");
        }
        return CurveSpec::from_csv(opt.file);
    }
    const double scale = opt.scale > 0.0 ? opt.scale : beta_of_alpha(alpha);
    if (opt.kind == "sqrt") return CurveSpec::sqrt_family(scale, opt.gamma_final);
    if (opt.kind == "power") {
        return CurveSpec::power_family(scale, opt.exponent, opt.gamma_final);
    }
    return CurveSpec::linear_family(scale, opt.gamma_final);
}

ordered_json curve_config(const CurveOptions& opt, const CurveSpec& curve) {
    ordered_json j;
    j["curve"] = opt.kind;
    if (opt.kind == "file") {
        j["curve_file"] = opt.file;
    } else {
        // effective scale: b(0) = c for every parametric family
        j["curve_scale"] = curve.b(0.0);
        if (opt.kind == "power") j["curve_exp"] = opt.exponent;
    }
    j["gamma_final"] = curve.gamma_final();
    return j;
}

void write_output(const std::string& content, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file " + out_path);
    f << content;
}

std::string json_dump(const ordered_json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------- beta ----

int run_beta(double alpha, bool have_alpha, double amin, double amax, int points,
             const std::string& format, const std::string& out) {
    std::vector<BetaSweepRow> rows;
    bool alpha_zero = false;
    if (have_alpha) {
        if (alpha == 0.0) {
            alpha_zero = true;
            rows.push_back({0.0, 1.0, 0.0, 0.0});
        } else {
            const auto sol = solve_x_alpha(alpha);
            rows.push_back({sol.alpha, sol.beta, sol.x_alpha, sol.residual});
        }
    } else {
        rows = beta_sweep(amin, amax, points);
    }

    if (format == "csv") {
        std::ostringstream os;
        if (alpha_zero) {
            os << "alpha,beta,x_alpha,residual\n0,1,,0\n";  // x_alpha undefined at alpha = 0
        } else {
            write_beta_sweep_csv(os, rows);
        }
        write_output(os.str(), out);
        return 0;
    }
    if (format == "json") {
        ordered_json j;
        j["config"] = {{"subcommand", "beta"}};
        if (have_alpha) {
            j["config"]["alpha"] = alpha;
        } else {
            j["config"]["alpha_min"] = amin;
            j["config"]["alpha_max"] = amax;
            j["config"]["points"] = points;
        }
        ordered_json rws = ordered_json::array();
        double max_resid = 0.0;
        for (const auto& r : rows) {
            ordered_json row;
            row["alpha"] = r.alpha;
            row["beta"] = r.beta;
            if (r.alpha == 0.0) {
                row["x_alpha"] = nullptr;
            } else {
                row["x_alpha"] = r.x_alpha;
            }
            row["residual"] = r.residual;
            rws.push_back(row);
            max_resid = std::max(max_resid, std::abs(r.residual));
        }
        j["results"] = {{"rows", rws}};
        j["diagnostics"] = {{"max_abs_residual", max_resid}};
        write_output(json_dump(j), out);
        return 0;
    }

    // svg: the beta(alpha) curve with the two closed-form anchor points.
    std::vector<double> xs, ys;
    for (const auto& r : rows) {
        xs.push_back(r.alpha);
        ys.push_back(r.beta);
    }
    svg::LineChart chart("Barrier constant beta(alpha)", "alpha", "beta");
    if (xs.size() >= 2) chart.add_line(xs, ys, "#1f77b4", 2.0);
    chart.add_marker(0.0, 1.0, "beta(0)=1");
    const double beta1 = beta_of_alpha(1.0);
    char label[64];
    std::snprintf(label, sizeof(label), "beta(1)=%.6g", beta1);
    chart.add_marker(1.0, beta1, label);
    std::ostringstream os;
    chart.render(os);
    write_output(os.str(), out);
    return 0;
}

// --------------------------------------------------------------- value ----

int run_value(double alpha, const CurveOptions& copt, double x, double t,
              const std::string& format, const std::string& out) {
    const CurveSpec curve = build_curve(copt, alpha);
    const ValueContext ctx(alpha, curve);

    if (format == "csv") {
        std::ostringstream os;
        const std::vector<double> xs{x}, ts{t};
        write_value_surface_csv(os, ctx, xs, ts);
        write_output(os.str(), out);
        return 0;
    }

    const double v = ctx.value(x, t);
    const bool stopped = ctx.stop_region(x, t);
    ordered_json j;
    j["config"] = {{"subcommand", "value"}, {"alpha", alpha}, {"x", x}, {"t", t}};
    j["config"].update(curve_config(copt, curve));
    j["results"] = {{"value", v},
                    {"region", stopped ? "stop" : "continue"},
                    {"barrier", curve.gamma(t)},
                    {"beta", ctx.beta()}};
    ordered_json diag;
    if (t < 1.0) {
        const double bt = curve.b(t);
        const double y = (x - curve.gamma_final()) / bt;
        diag["y"] = y;
        diag["b_t"] = bt;
        diag["f_y"] = ctx.f_reduced(y);
    }
    j["diagnostics"] = diag;
    write_output(json_dump(j), out);
    return 0;
}

// --------------------------------------------------------------- paths ----

int run_paths(double alpha, const CurveOptions& copt, double x, double t, int count,
              int steps, std::uint64_t seed, const std::string& format,
              const std::string& out) {
    if (count < 1) throw std::invalid_argument("paths: need --paths >= 1");
    if (steps < 1) throw std::invalid_argument("paths: need --steps >= 1");
    const CurveSpec curve = build_curve(copt, alpha);
    const ModelParams params{alpha, beta_of_alpha(alpha), curve};

    const auto grid = uniform_grid(t, 1.0, steps);
    std::vector<PathGrid> paths;
    paths.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        SplitStream rng(seed, static_cast<std::uint64_t>(i));
        paths.push_back(simulate_path(params, x, t, grid, rng));
    }

    if (format == "csv") {
        std::ostringstream os;
        write_paths_csv(os, paths);
        write_output(os.str(), out);
        return 0;
    }

    // svg: one-standard-deviation band around the expected value, the
    // stopping barrier gamma(s), and the sampled paths.
    std::vector<double> mean(grid.size()), lo(grid.size()), hi(grid.size()),
        barrier_line(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const MeanVar mv = mean_var(params, x, t, grid[i]);
        const double sd = std::sqrt(mv.variance);
        mean[i] = mv.mean;
        lo[i] = mv.mean - sd;
        hi[i] = mv.mean + sd;
        barrier_line[i] = curve.gamma(grid[i]);
    }
    char title[96];
    std::snprintf(title, sizeof(title), "Sample paths, alpha=%.4g, seed=%llu", alpha,
                  static_cast<unsigned long long>(seed));
    svg::LineChart chart(title, "s", "X_s");
    chart.add_band(grid, lo, hi, "#d9d9d9");
    const char* palette[4] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
    for (std::size_t p = 0; p < paths.size(); ++p) {
        chart.add_line(paths[p].times, paths[p].values, palette[p % 4], 1.0);
    }
    chart.add_line(grid, barrier_line, "#000000", 2.0);
    std::ostringstream os;
    chart.render(os);
    write_output(os.str(), out);
    return 0;
}

// -------------------------------------------------------------- verify ----

int run_verify(double alpha, const CurveOptions& copt, double x, double t,
               std::vector<double> scales, long long n_paths, int n_steps,
               std::uint64_t seed, const std::string& format, const std::string& out) {
    if (scales.empty()) scales = {0.5, 0.75, 1.0, 1.25, 1.5};
    const CurveSpec curve = build_curve(copt, alpha);
    const ModelParams params{alpha, beta_of_alpha(alpha), curve};

    const auto rows = optimality_scan(params, x, t, scales, n_paths, n_steps, seed);
    const auto report = verify_value(params, x, t, n_paths, n_steps, seed);

    double unit_mean = 0.0;
    for (const auto& r : rows) {
        if (r.scale == 1.0) unit_mean = r.estimate.mean;
    }
    bool dominated = true;
    for (const auto& r : rows) {
        if (r.scale != 1.0 &&
            unit_mean < r.estimate.mean - 3.0 * r.paired_se_vs_unit) {
            dominated = false;
        }
    }
    const bool ok = dominated && !report.flagged;

    if (format == "csv") {
        std::ostringstream os;
        write_scan_csv(os, rows);
        write_output(os.str(), out);
        return ok ? 0 : 1;
    }

    ordered_json j;
    j["config"] = {{"subcommand", "verify"}, {"alpha", alpha},    {"x", x},
                   {"t", t},                 {"paths", n_paths},  {"steps", n_steps},
                   {"seed", seed},           {"scales", scales}};
    j["config"].update(curve_config(copt, curve));
    ordered_json scan = ordered_json::array();
    for (const auto& r : rows) {
        scan.push_back({{"c", r.scale},
                        {"mean", r.estimate.mean},
                        {"std_error", r.estimate.std_error},
                        {"paired_se_vs_unit", r.paired_se_vs_unit}});
    }
    j["results"] = {{"scan", scan},
                    {"analytic_value", report.analytic},
                    {"mc_mean", report.mc.mean},
                    {"mc_std_error", report.mc.std_error},
                    {"z_score", report.z_score}};
    j["diagnostics"] = {{"bias_margin", report.bias_margin},
                        {"value_flagged", report.flagged},
                        {"unit_scale_dominates", dominated}};
    write_output(json_dump(j), out);
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Optimal stopping of pinned bridge processes: free boundary, "
                 "closed-form value, exact simulation, Monte Carlo verification"};
    app.require_subcommand(1);

    // beta
    auto* beta_cmd = app.add_subcommand("beta", "Barrier constant beta(alpha)");
    double b_alpha = 1.0, b_amin = 0.05, b_amax = 3.0;
    int b_points = 60;
    std::string b_format = "csv", b_out;
    auto* b_alpha_opt = beta_cmd->add_option("--alpha", b_alpha, "Single alpha in [0, 8]");
    beta_cmd->add_option("--alpha-min", b_amin, "Sweep start > 0")->capture_default_str();
    beta_cmd->add_option("--alpha-max", b_amax, "Sweep end <= 8")->capture_default_str();
    beta_cmd->add_option("--points", b_points, "Sweep size")->capture_default_str();
    beta_cmd->add_option("--format", b_format, "csv|json|svg")
        ->check(CLI::IsMember({"csv", "json", "svg"}))
        ->capture_default_str();
    beta_cmd->add_option("--out", b_out, "Output path (stdout if omitted)");

    // value
    auto* value_cmd = app.add_subcommand("value", "Closed-form value V(x,t)");
    double v_alpha = 1.0, v_x = 0.0, v_t = 0.0;
    CurveOptions v_curve;
    std::string v_format = "json", v_out;
    value_cmd->add_option("--alpha", v_alpha, "alpha >= 0")->capture_default_str();
    add_curve_flags(value_cmd, v_curve);
    value_cmd->add_option("--x", v_x, "Current level x")->capture_default_str();
    value_cmd->add_option("--t", v_t, "Current time t in [0,1]")->capture_default_str();
    value_cmd->add_option("--format", v_format, "json|csv")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    value_cmd->add_option("--out", v_out, "Output path (stdout if omitted)");

    // paths
    auto* paths_cmd = app.add_subcommand("paths", "Simulate paths; CSV or SVG figure");
    double p_alpha = 1.0, p_x = 0.0, p_t = 0.0;
    CurveOptions p_curve;
    int p_count = 4, p_steps = 500;
    std::uint64_t p_seed = 12345;
    std::string p_format = "svg", p_out;
    paths_cmd->add_option("--alpha", p_alpha, "alpha >= 0")->capture_default_str();
    add_curve_flags(paths_cmd, p_curve);
    paths_cmd->add_option("--x", p_x, "Start level")->capture_default_str();
    paths_cmd->add_option("--t", p_t, "Start time in [0,1)")->capture_default_str();
    paths_cmd->add_option("--paths", p_count, "Number of paths")->capture_default_str();
    paths_cmd->add_option("--steps", p_steps, "Grid steps to 1")->capture_default_str();
    paths_cmd->add_option("--seed", p_seed, "Master seed")->capture_default_str();
    paths_cmd->add_option("--format", p_format, "csv|svg")
        ->check(CLI::IsMember({"csv", "svg"}))
        ->capture_default_str();
    paths_cmd->add_option("--out", p_out, "Output path (stdout if omitted)");

    // verify
    auto* verify_cmd =
        app.add_subcommand("verify", "Monte Carlo optimality and value verification");
    double y_alpha = 1.0, y_x = 0.0, y_t = 0.0;
    CurveOptions y_curve;
    std::vector<double> y_scales;
    long long y_paths = 10000;
    int y_steps = 1000;
    std::uint64_t y_seed = 12345;
    std::string y_format = "json", y_out;
    verify_cmd->add_option("--alpha", y_alpha, "alpha >= 0")->capture_default_str();
    add_curve_flags(verify_cmd, y_curve);
    verify_cmd->add_option("--x", y_x, "Start level")->capture_default_str();
    verify_cmd->add_option("--t", y_t, "Start time in [0,1)")->capture_default_str();
    verify_cmd->add_option("--scales", y_scales, "Rule scales (must include 1.0)")
        ->delimiter(',');
    verify_cmd->add_option("--paths", y_paths, "Monte Carlo paths")->capture_default_str();
    verify_cmd->add_option("--steps", y_steps, "Monitoring grid steps")
        ->capture_default_str();
    verify_cmd->add_option("--seed", y_seed, "Master seed")->capture_default_str();
    verify_cmd->add_option("--format", y_format, "json|csv")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    verify_cmd->add_option("--out", y_out, "Output path (stdout if omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*beta_cmd) {
            return run_beta(b_alpha, b_alpha_opt->count() > 0, b_amin, b_amax, b_points,
                            b_format, b_out);
        }
        if (*value_cmd) return run_value(v_alpha, v_curve, v_x, v_t, v_format, v_out);
        if (*paths_cmd) {
            return run_paths(p_alpha, p_curve, p_x, p_t, p_count, p_steps, p_seed, p_format,
                             p_out);
        }
        return run_verify(y_alpha, y_curve, y_x, y_t, y_scales, y_paths, y_steps, y_seed,
                          y_format, y_out);
    } catch (const precision_error& e) {
        std::cerr << "numerical fault: " << e.what() << "\n";
        return 3;
    } catch (const std::overflow_error& e) {
        std::cerr << "numerical fault: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
