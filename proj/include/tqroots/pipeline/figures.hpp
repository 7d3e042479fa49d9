#pragma once

#include "tqroots/pipeline/record.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace tqroots {

struct SweepConfig;

/// Minimal SVG scatter/line plot with linear axes.
class SvgPlot {
public:
    SvgPlot(std::string title, std::string x_label, std::string y_label);

    void point(double x, double y, const std::string& fill, const std::string& stroke = "none", double r = 2.0);
    void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& stroke, bool dashed = false,
                  double width = 1.0);
    void legend(const std::string& label, const std::string& color, bool hollow = false);

    /// Bounds default to the data extent with a 5% margin.
    void set_x_range(double lo, double hi);
    void set_y_range(double lo, double hi);

    std::string render() const;
    void save(const std::filesystem::path& file) const;

private:
    struct Mark {
        double x, y, r;
        std::string fill, stroke;
    };
    struct Line {
        std::vector<std::pair<double, double>> pts;
        std::string stroke;
        bool dashed;
        double width;
    };
    struct LegendEntry {
        std::string label, color;
        bool hollow;
    };

    void extent(double& x0, double& x1, double& y0, double& y1) const;

    std::string title_, x_label_, y_label_;
    std::vector<Mark> marks_;
    std::vector<Line> lines_;
    std::vector<LegendEntry> legend_;
    bool has_x_range_ = false, has_y_range_ = false;
    double x_lo_ = 0, x_hi_ = 1, y_lo_ = 0, y_hi_ = 1;
};

/// Color for chain length n on a fixed blue-to-red ramp over [n_min, n_max].
std::string ramp_color(int n, int n_min, int n_max);

/// Write the requested figures (fig1..fig6) into cfg.output_dir. Throws
/// std::runtime_error naming missing chain lengths when a requested figure
/// needs a certified record for an n in the configured range that is absent.
std::vector<std::filesystem::path> emit_figures(const SweepResult& res, const SweepConfig& cfg);

}  // namespace tqroots
