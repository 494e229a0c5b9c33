#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct RunResult {
    int exit_code;
    std::string output;
};

std::string cli_path() {
    const char* p = std::getenv("BRIDGESTOP_CLI");
    REQUIRE_MESSAGE(p != nullptr, "BRIDGESTOP_CLI must point at the built binary");
    return p;
}

std::string golden_dir() {
    const char* p = std::getenv("BRIDGESTOP_GOLDEN_DIR");
    REQUIRE_MESSAGE(p != nullptr, "BRIDGESTOP_GOLDEN_DIR must be set");
    return p;
}

RunResult run(const std::string& args) {
    const std::string cmd = cli_path() + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    REQUIRE_MESSAGE(f.good(), ("missing file: " + path).c_str());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (line.back() == ',') cells.push_back("");
        rows.push_back(std::move(cells));
    }
    return rows;
}

}  // namespace

TEST_CASE("beta single point") {
    const auto r = run("beta --alpha 1");
    CHECK(r.exit_code == 0);
    const auto rows = parse_csv(r.output);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == std::vector<std::string>{"alpha", "beta", "x_alpha", "residual"});
    CHECK(std::abs(std::stod(rows[1][1]) - 0.839924) <= 1e-5);

    const auto r0 = run("beta --alpha 0");
    CHECK(r0.exit_code == 0);
    const auto rows0 = parse_csv(r0.output);
    REQUIRE(rows0.size() == 2);
    CHECK(rows0[1][0] == "0");
    CHECK(rows0[1][1] == "1");
    CHECK(rows0[1][2] == "");  // x_alpha undefined at alpha = 0
}

TEST_CASE("beta sweep csv: row count and residual column") {
    const auto r = run("beta --alpha-min 0.1 --alpha-max 3 --points 30 --format csv");
    CHECK(r.exit_code == 0);
    const auto rows = parse_csv(r.output);
    REQUIRE(rows.size() == 31);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(std::abs(std::stod(rows[i][3])) <= 1e-10);
    }
    CHECK(std::stod(rows[1][0]) == doctest::Approx(0.1));
    CHECK(std::stod(rows[30][0]) == doctest::Approx(3.0));
}

TEST_CASE("value json matches the golden file") {
    const auto r = run("value --alpha 1 --x 0 --t 0 --format json");
    CHECK(r.exit_code == 0);
    CHECK(r.output == read_file(golden_dir() + "/value_alpha1.json"));
}

TEST_CASE("value branches through the cli") {
    const auto stop = run("value --alpha 1 --x 2 --t 0.25 --format csv");
    CHECK(stop.exit_code == 0);
    const auto rows = parse_csv(stop.output);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == std::vector<std::string>{"x", "t", "value", "region"});
    CHECK(rows[1][2] == "2");
    CHECK(rows[1][3] == "stop");

    const auto far = run("value --alpha 1 --x -1000000 --t 0 --format csv");
    const auto frows = parse_csv(far.output);
    CHECK(std::abs(std::stod(frows[1][2])) <= 1e-5);  // -> gamma(1) = 0
    CHECK(frows[1][3] == "continue");
}

TEST_CASE("paths csv shape and determinism") {
    const std::string args = "paths --alpha 1 --paths 3 --steps 50 --seed 9 --format csv";
    const auto a = run(args);
    const auto b = run(args);
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
    const auto rows = parse_csv(a.output);
    REQUIRE(rows.size() == 1 + 3 * 51);
    CHECK(rows[0] == std::vector<std::string>{"path_id", "t", "x"});
    // pinned endpoint rows
    CHECK(rows[51][1] == "1");
    CHECK(rows[51][2] == "0");
}

TEST_CASE("paths svg is byte-stable and matches the golden") {
    const std::string args =
        "paths --alpha 1 --paths 4 --steps 200 --seed 20240612 --format svg";
    const auto a = run(args);
    const auto b = run(args);
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
    CHECK(a.output == read_file(golden_dir() + "/paths_alpha1.svg"));
    CHECK(a.output.find("<polygon fill=\"#d9d9d9\"") != std::string::npos);
    CHECK(a.output.find("</svg>") != std::string::npos);
}

TEST_CASE("beta svg matches the golden with annotated anchors") {
    const std::string args =
        "beta --alpha-min 0.25 --alpha-max 3 --points 12 --format svg";
    const auto a = run(args);
    CHECK(a.exit_code == 0);
    CHECK(a.output == read_file(golden_dir() + "/beta_sweep.svg"));
    CHECK(a.output.find("beta(0)=1") != std::string::npos);
    CHECK(a.output.find("beta(1)=0.839924") != std::string::npos);
}

TEST_CASE("verify runs clean at desk scale") {
    const auto r = run("verify --alpha 1 --paths 2000 --steps 200 --seed 5 --format json");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"unit_scale_dominates\": true") != std::string::npos);
    CHECK(r.output.find("\"value_flagged\": false") != std::string::npos);

    const auto single = run("verify --alpha 1 --scales 1.0 --paths 2000 --steps 200 --seed 6");
    CHECK(single.exit_code == 0);
}

TEST_CASE("usage and config errors exit with 2") {
    CHECK(run("beta --alpha 9").exit_code == 2);           // out of the supported range
    CHECK(run("value --no-such-flag").exit_code == 2);
    CHECK(run("paths --paths 0").exit_code == 2);
    CHECK(run("verify --scales 0.5,1.5 --paths 200 --steps 100").exit_code == 2);

    // invalid curve csv
    const std::string bad = "/tmp/bridgestop_bad_curve.csv";
    {
        std::ofstream f(bad);
        f << "t,gamma\n0,1\n0.5,2\n1,0\n";  // not decreasing
    }
    CHECK(run("value --alpha 1 --curve file --curve-file " + bad).exit_code == 2);
    CHECK(run("value --alpha 1 --curve file --curve-file /no/such/file.csv").exit_code == 2);
}

TEST_CASE("numerical faults exit with 3") {
    // xi = 1/(2 alpha^2) ~ 5e9: the Kummer series overflows long before the
    // root bracket is probed.
    CHECK(run("beta --alpha 1e-05").exit_code == 3);
}

TEST_CASE("tabulated curve through the cli") {
    const std::string path = "/tmp/bridgestop_curve_ok.csv";
    {
        std::ofstream f(path);
        f << "t,gamma\n0,1\n0.25,0.8\n0.5,0.55\n0.75,0.3\n1,0\n";
    }
    const auto r = run("value --alpha 1 --curve file --curve-file " + path +
                       " --x 0 --t 0 --format csv");
    CHECK(r.exit_code == 0);
    const auto rows = parse_csv(r.output);
    REQUIRE(rows.size() == 2);
    CHECK(rows[1][3] == "continue");
    CHECK(std::stod(rows[1][2]) > 0.0);
}
