#include "bridgestop/svg.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace bridgestop::svg {

namespace {

constexpr double kWidth = 800.0, kHeight = 500.0;
constexpr double kLeft = 64.0, kRight = 20.0, kTop = 34.0, kBottom = 46.0;

std::string fmt(double v, const char* spec = "%.2f") {
    char buf[48];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

LineChart::LineChart(std::string title, std::string x_label, std::string y_label)
    : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

void LineChart::include_point(double x, double y) {
    if (!std::isfinite(x) || !std::isfinite(y)) {
        throw std::invalid_argument("svg: non-finite data point");
    }
    if (!has_data_) {
        x_min_ = x_max_ = x;
        y_min_ = y_max_ = y;
        has_data_ = true;
        return;
    }
    x_min_ = std::min(x_min_, x);
    x_max_ = std::max(x_max_, x);
    y_min_ = std::min(y_min_, y);
    y_max_ = std::max(y_max_, y);
}

void LineChart::add_band(std::span<const double> xs, std::span<const double> lo,
                         std::span<const double> hi, const std::string& fill) {
    if (xs.size() != lo.size() || xs.size() != hi.size() || xs.size() < 2) {
        throw std::invalid_argument("svg: band needs matching xs/lo/hi, >= 2 points");
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
        include_point(xs[i], lo[i]);
        include_point(xs[i], hi[i]);
    }
    bands_.push_back({{xs.begin(), xs.end()}, {lo.begin(), lo.end()}, {hi.begin(), hi.end()},
                      fill});
}

void LineChart::add_line(std::span<const double> xs, std::span<const double> ys,
                         const std::string& stroke, double width) {
    if (xs.size() != ys.size() || xs.size() < 2) {
        throw std::invalid_argument("svg: line needs matching xs/ys, >= 2 points");
    }
    for (std::size_t i = 0; i < xs.size(); ++i) include_point(xs[i], ys[i]);
    lines_.push_back({{xs.begin(), xs.end()}, {ys.begin(), ys.end()}, stroke, width});
}

void LineChart::add_marker(double x, double y, const std::string& label) {
    include_point(x, y);
    markers_.push_back({x, y, label});
}

void LineChart::render(std::ostream& out) const {
    if (!has_data_) {
        throw std::logic_error("svg: nothing to render");
    }
    const double x_pad = (x_max_ - x_min_) * 0.03 + 1e-12;
    const double y_pad = (y_max_ - y_min_) * 0.06 + 1e-12;
    const double x0 = x_min_ - x_pad, x1 = x_max_ + x_pad;
    const double y0 = y_min_ - y_pad, y1 = y_max_ + y_pad;
    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (x - x0) / (x1 - x0) * plot_w; };
    auto py = [&](double y) { return kTop + (y1 - y) / (y1 - y0) * plot_h; };

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"500\" "
           "viewBox=\"0 0 800 500\">\n"
        << "<rect width=\"800\" height=\"500\" fill=\"#ffffff\"/>\n";

    for (const auto& b : bands_) {
        out << "<polygon fill=\"" << b.fill << "\" stroke=\"none\" points=\"";
        for (std::size_t i = 0; i < b.xs.size(); ++i) {
            out << fmt(px(b.xs[i])) << ',' << fmt(py(b.hi[i])) << ' ';
        }
        for (std::size_t i = b.xs.size(); i-- > 0;) {
            out << fmt(px(b.xs[i])) << ',' << fmt(py(b.lo[i]));
            if (i > 0) out << ' ';
        }
        out << "\"/>\n";
    }

    // Axes with 5 ticks each.
    out << "<g stroke=\"#333333\" stroke-width=\"1\" fill=\"none\">\n"
        << "<path d=\"M" << fmt(kLeft) << ' ' << fmt(kTop) << " V" << fmt(kTop + plot_h)
        << " H" << fmt(kLeft + plot_w) << "\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double tx = x0 + (x1 - x0) * i / 4.0;
        const double ty = y0 + (y1 - y0) * i / 4.0;
        out << "<path d=\"M" << fmt(px(tx)) << ' ' << fmt(kTop + plot_h) << " v5\"/>\n"
            << "<path d=\"M" << fmt(kLeft) << ' ' << fmt(py(ty)) << " h-5\"/>\n";
    }
    out << "</g>\n<g font-family=\"sans-serif\" font-size=\"12\" fill=\"#333333\">\n";
    for (int i = 0; i <= 4; ++i) {
        const double tx = x0 + (x1 - x0) * i / 4.0;
        const double ty = y0 + (y1 - y0) * i / 4.0;
        out << "<text x=\"" << fmt(px(tx)) << "\" y=\"" << fmt(kTop + plot_h + 18)
            << "\" text-anchor=\"middle\">" << fmt(tx, "%.3g") << "</text>\n"
            << "<text x=\"" << fmt(kLeft - 8) << "\" y=\"" << fmt(py(ty) + 4)
            << "\" text-anchor=\"end\">" << fmt(ty, "%.3g") << "</text>\n";
    }
    out << "<text x=\"" << fmt(kLeft + plot_w / 2) << "\" y=\"" << fmt(kHeight - 8)
        << "\" text-anchor=\"middle\">" << xml_escape(x_label_) << "</text>\n"
        << "<text x=\"14\" y=\"" << fmt(kTop + plot_h / 2)
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 14 " << fmt(kTop + plot_h / 2)
        << ")\">" << xml_escape(y_label_) << "</text>\n"
        << "<text x=\"" << fmt(kWidth / 2) << "\" y=\"20\" text-anchor=\"middle\" "
           "font-size=\"14\">"
        << xml_escape(title_) << "</text>\n</g>\n";

    for (const auto& l : lines_) {
        out << "<polyline fill=\"none\" stroke=\"" << l.stroke << "\" stroke-width=\""
            << fmt(l.width, "%.1f") << "\" points=\"";
        for (std::size_t i = 0; i < l.xs.size(); ++i) {
            out << fmt(px(l.xs[i])) << ',' << fmt(py(l.ys[i]));
            if (i + 1 < l.xs.size()) out << ' ';
        }
        out << "\"/>\n";
    }

    for (const auto& m : markers_) {
        out << "<circle cx=\"" << fmt(px(m.x)) << "\" cy=\"" << fmt(py(m.y))
            << "\" r=\"4\" fill=\"#d62728\"/>\n"
            << "<text x=\"" << fmt(px(m.x) + 8) << "\" y=\"" << fmt(py(m.y) - 6)
            << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#333333\">"
            << xml_escape(m.label) << "</text>\n";
    }

    out << "</svg>\n";
}

}  // namespace bridgestop::svg
