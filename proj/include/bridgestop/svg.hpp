#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace bridgestop::svg {

/**
 * Minimal deterministic SVG line chart: fixed 800x500 canvas, filled band
 * polygons, polylines, point markers, 5 ticks per axis. Coordinates are
 * printed with fixed precision so identical inputs give identical bytes.
 */
class LineChart {
  public:
    LineChart(std::string title, std::string x_label, std::string y_label);

    /// Filled band between lo(x) and hi(x).
    void add_band(std::span<const double> xs, std::span<const double> lo,
                  std::span<const double> hi, const std::string& fill);

    void add_line(std::span<const double> xs, std::span<const double> ys,
                  const std::string& stroke, double width);

    /// Circle marker with a text label anchored next to it.
    void add_marker(double x, double y, const std::string& label);

    void render(std::ostream& out) const;

  private:
    struct Band {
        std::vector<double> xs, lo, hi;
        std::string fill;
    };
    struct Line {
        std::vector<double> xs, ys;
        std::string stroke;
        double width;
    };
    struct Marker {
        double x, y;
        std::string label;
    };

    void include_point(double x, double y);

    std::string title_, x_label_, y_label_;
    std::vector<Band> bands_;
    std::vector<Line> lines_;
    std::vector<Marker> markers_;
    double x_min_ = 0.0, x_max_ = 1.0, y_min_ = 0.0, y_max_ = 1.0;
    bool has_data_ = false;
};

}  // namespace bridgestop::svg
