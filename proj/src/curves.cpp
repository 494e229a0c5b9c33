#include "bridgestop/curves.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bridgestop {

namespace {

void check_unit_interval(double t) {
    if (!(t >= 0.0 && t <= 1.0)) {
        throw std::domain_error("curve: t must lie in [0,1]");
    }
}

// Fritsch-Carlson shape-preserving tangents for cubic Hermite interpolation.
// Decreasing data yields non-positive tangents, so the interpolant is
// decreasing as well.
std::vector<double> pchip_tangents(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    std::vector<double> h(n - 1), d(n - 1), m(n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = x[i + 1] - x[i];
        d[i] = (y[i + 1] - y[i]) / h[i];
    }
    if (n == 2) {
        m[0] = m[1] = d[0];
        return m;
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (d[i - 1] == 0.0 || d[i] == 0.0 || (d[i - 1] > 0.0) != (d[i] > 0.0)) {
            m[i] = 0.0;
        } else {
            const double w1 = 2.0 * h[i] + h[i - 1];
            const double w2 = h[i] + 2.0 * h[i - 1];
            m[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
        }
    }
    // One-sided endpoint formula with the usual monotonicity clamps.
    auto endpoint = [](double h0, double h1, double d0, double d1) {
        double t = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if (t * d0 <= 0.0) {
            t = 0.0;
        } else if ((d0 > 0.0) != (d1 > 0.0) && std::abs(t) > 3.0 * std::abs(d0)) {
            t = 3.0 * d0;
        }
        return t;
    };
    m[0] = endpoint(h[0], h[1], d[0], d[1]);
    m[n - 1] = endpoint(h[n - 2], h[n - 3], d[n - 2], d[n - 3]);
    return m;
}

}  // namespace

CurveSpec CurveSpec::sqrt_family(double scale, double gamma_final) {
    if (!(scale > 0.0)) throw std::domain_error("sqrt family: scale must be > 0");
    CurveSpec c;
    c.family_ = CurveFamily::Sqrt;
    c.scale_ = scale;
    c.gamma_final_ = gamma_final;
    return c;
}

CurveSpec CurveSpec::power_family(double scale, double exponent, double gamma_final) {
    if (!(scale > 0.0)) throw std::domain_error("power family: scale must be > 0");
    if (!(exponent > 0.0)) throw std::domain_error("power family: exponent must be > 0");
    CurveSpec c;
    c.family_ = CurveFamily::Power;
    c.scale_ = scale;
    c.exponent_ = exponent;
    c.gamma_final_ = gamma_final;
    return c;
}

CurveSpec CurveSpec::linear_family(double scale, double gamma_final) {
    if (!(scale > 0.0)) throw std::domain_error("linear family: scale must be > 0");
    CurveSpec c;
    c.family_ = CurveFamily::Linear;
    c.scale_ = scale;
    c.gamma_final_ = gamma_final;
    return c;
}

CurveSpec CurveSpec::tabulated(std::vector<double> t, std::vector<double> gamma) {
    if (t.size() != gamma.size() || t.size() < 2) {
        throw std::invalid_argument("tabulated curve: need matching t/gamma lists, >= 2 rows");
    }
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
        if (!(t[i] < t[i + 1])) {
            throw std::invalid_argument("tabulated curve: t must be strictly increasing");
        }
    }
    if (t.front() != 0.0 || t.back() != 1.0) {
        throw std::invalid_argument(
            "tabulated curve: data must span t = 0 to t = 1 exactly (no extrapolation)");
    }
    CurveSpec c;
    c.family_ = CurveFamily::Tabulated;
    c.gamma_final_ = gamma.back();
    c.knots_t_ = std::move(t);
    c.knots_b_.resize(gamma.size());
    for (std::size_t i = 0; i < gamma.size(); ++i) c.knots_b_[i] = gamma[i] - c.gamma_final_;
    c.tangents_ = pchip_tangents(c.knots_t_, c.knots_b_);
    return c;
}

CurveSpec CurveSpec::from_csv_stream(std::istream& in, const std::string& name) {
    std::string line;
    if (!std::getline(in, line)) {
        throw std::runtime_error("curve csv " + name + ": empty file");
    }
    // Tolerate a UTF-8 BOM and surrounding whitespace in the header.
    std::string header = line;
    if (header.rfind("\xEF\xBB\xBF", 0) == 0) header.erase(0, 3);
    header.erase(std::remove_if(header.begin(), header.end(),
                                [](unsigned char ch) { return std::isspace(ch); }),
                 header.end());
    if (header != "t,gamma") {
        throw std::runtime_error("curve csv " + name + ": expected header 't,gamma'");
    }
    std::vector<double> ts, gs;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string a, b;
        if (!std::getline(ls, a, ',') || !std::getline(ls, b)) {
            throw std::runtime_error("curve csv " + name + ": malformed row " +
                                     std::to_string(row));
        }
        try {
            ts.push_back(std::stod(a));
            gs.push_back(std::stod(b));
        } catch (const std::exception&) {
            throw std::runtime_error("curve csv " + name + ": non-numeric row " +
                                     std::to_string(row));
        }
    }
    for (std::size_t i = 0; i + 1 < gs.size(); ++i) {
        if (!(gs[i] > gs[i + 1])) {
            throw std::runtime_error("curve csv " + name +
                                     ": gamma must be strictly decreasing");
        }
    }
    return tabulated(std::move(ts), std::move(gs));
}

CurveSpec CurveSpec::from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("curve csv: cannot open " + path);
    }
    return from_csv_stream(in, path);
}

double CurveSpec::b(double t) const {
    check_unit_interval(t);
    switch (family_) {
        case CurveFamily::Sqrt:
            return scale_ * std::sqrt(1.0 - t);
        case CurveFamily::Power:
            return scale_ * std::pow(1.0 - t, exponent_);
        case CurveFamily::Linear:
            return scale_ * (1.0 - t);
        case CurveFamily::Tabulated:
            break;
    }
    const auto it = std::upper_bound(knots_t_.begin(), knots_t_.end(), t);
    const std::size_t i = static_cast<std::size_t>(
        std::clamp<std::ptrdiff_t>(it - knots_t_.begin() - 1, 0,
                                   static_cast<std::ptrdiff_t>(knots_t_.size()) - 2));
    const double h = knots_t_[i + 1] - knots_t_[i];
    const double s = (t - knots_t_[i]) / h;
    const double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * knots_b_[i] + (s3 - 2 * s2 + s) * h * tangents_[i] +
           (-2 * s3 + 3 * s2) * knots_b_[i + 1] + (s3 - s2) * h * tangents_[i + 1];
}

double CurveSpec::b_prime(double t) const {
    check_unit_interval(t);
    switch (family_) {
        case CurveFamily::Sqrt:
            if (t == 1.0) {
                throw std::domain_error("b': sqrt family derivative is unbounded at t = 1");
            }
            return -0.5 * scale_ / std::sqrt(1.0 - t);
        case CurveFamily::Power:
            if (t == 1.0 && exponent_ < 1.0) {
                throw std::domain_error("b': power family derivative is unbounded at t = 1");
            }
            return -scale_ * exponent_ * std::pow(1.0 - t, exponent_ - 1.0);
        case CurveFamily::Linear:
            return -scale_;
        case CurveFamily::Tabulated:
            break;
    }
    const auto it = std::upper_bound(knots_t_.begin(), knots_t_.end(), t);
    const std::size_t i = static_cast<std::size_t>(
        std::clamp<std::ptrdiff_t>(it - knots_t_.begin() - 1, 0,
                                   static_cast<std::ptrdiff_t>(knots_t_.size()) - 2));
    const double h = knots_t_[i + 1] - knots_t_[i];
    const double s = (t - knots_t_[i]) / h;
    const double s2 = s * s;
    return ((6 * s2 - 6 * s) * knots_b_[i] + (3 * s2 - 4 * s + 1) * h * tangents_[i] +
            (-6 * s2 + 6 * s) * knots_b_[i + 1] + (3 * s2 - 2 * s) * h * tangents_[i + 1]) /
           h;
}

std::vector<std::string> CurveSpec::validate() const {
    std::vector<std::string> violations;
    const int n = 1000;
    double prev = b(0.0);
    if (!(prev > 0.0)) {
        violations.push_back("b(0) is not positive");
    }
    for (int i = 1; i <= n; ++i) {
        const double t = static_cast<double>(i) / n;
        const double bt = b(t);
        if (t < 1.0 && !(bt > 0.0)) {
            violations.push_back("not positive at t=" + std::to_string(t));
        }
        if (!(bt < prev)) {
            violations.push_back("not decreasing at t=" + std::to_string(t));
        }
        prev = bt;
    }
    if (std::abs(b(1.0)) > 1e-12) {
        violations.push_back("b(1) differs from 0 by more than 1e-12");
    }
    return violations;
}

}  // namespace bridgestop
