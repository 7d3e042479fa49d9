#include "tqroots/pipeline/figures.hpp"

#include "tqroots/pipeline/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace tqroots {

namespace fs = std::filesystem;

namespace {

constexpr double kWidth = 640, kHeight = 480;
constexpr double kLeft = 70, kRight = 150, kTop = 40, kBottom = 55;

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(6) << v;
    return os.str();
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            default: out += c;
        }
    }
    return out;
}

double nice_step(double span) {
    double raw = span / 6;
    double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double m : {1.0, 2.0, 5.0, 10.0})
        if (m * mag >= raw) return m * mag;
    return 10 * mag;
}

}  // namespace

SvgPlot::SvgPlot(std::string title, std::string x_label, std::string y_label)
    : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

void SvgPlot::point(double x, double y, const std::string& fill, const std::string& stroke, double r) {
    marks_.push_back({x, y, r, fill, stroke});
}

void SvgPlot::polyline(const std::vector<std::pair<double, double>>& pts, const std::string& stroke, bool dashed,
                       double width) {
    lines_.push_back({pts, stroke, dashed, width});
}

void SvgPlot::legend(const std::string& label, const std::string& color, bool hollow) {
    legend_.push_back({label, color, hollow});
}

void SvgPlot::set_x_range(double lo, double hi) {
    has_x_range_ = true;
    x_lo_ = lo;
    x_hi_ = hi;
}

void SvgPlot::set_y_range(double lo, double hi) {
    has_y_range_ = true;
    y_lo_ = lo;
    y_hi_ = hi;
}

void SvgPlot::extent(double& x0, double& x1, double& y0, double& y1) const {
    x0 = y0 = std::numeric_limits<double>::infinity();
    x1 = y1 = -std::numeric_limits<double>::infinity();
    auto take = [&](double x, double y) {
        x0 = std::min(x0, x);
        x1 = std::max(x1, x);
        y0 = std::min(y0, y);
        y1 = std::max(y1, y);
    };
    for (const auto& m : marks_) take(m.x, m.y);
    for (const auto& l : lines_)
        for (const auto& [x, y] : l.pts) take(x, y);
    if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    auto pad = [](double& lo, double& hi) {
        double span = hi - lo;
        if (span <= 0) span = std::max(1.0, std::fabs(lo));
        lo -= 0.05 * span;
        hi += 0.05 * span;
    };
    pad(x0, x1);
    pad(y0, y1);
    if (has_x_range_) x0 = x_lo_, x1 = x_hi_;
    if (has_y_range_) y0 = y_lo_, y1 = y_hi_;
}

std::string SvgPlot::render() const {
    double x0, x1, y0, y1;
    extent(x0, x1, y0, y1);
    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    auto sx = [&](double x) { return kLeft + (x - x0) / (x1 - x0) * pw; };
    auto sy = [&](double y) { return kTop + (y1 - y) / (y1 - y0) * ph; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
       << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << fmt(kLeft + pw / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
       << escape(title_) << "</text>\n";
    os << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << fmt(pw) << "\" height=\"" << fmt(ph)
       << "\" fill=\"none\" stroke=\"black\"/>\n";

    const double xs = nice_step(x1 - x0);
    for (double t = std::ceil(x0 / xs) * xs; t <= x1 + 1e-12; t += xs) {
        os << "<line x1=\"" << fmt(sx(t)) << "\" y1=\"" << fmt(kTop + ph) << "\" x2=\"" << fmt(sx(t)) << "\" y2=\""
           << fmt(kTop + ph + 5) << "\" stroke=\"black\"/>"
           << "<text x=\"" << fmt(sx(t)) << "\" y=\"" << fmt(kTop + ph + 18) << "\" text-anchor=\"middle\">"
           << fmt(std::fabs(t) < xs * 1e-9 ? 0.0 : t) << "</text>\n";
    }
    const double ys = nice_step(y1 - y0);
    for (double t = std::ceil(y0 / ys) * ys; t <= y1 + 1e-12; t += ys) {
        os << "<line x1=\"" << fmt(kLeft - 5) << "\" y1=\"" << fmt(sy(t)) << "\" x2=\"" << kLeft << "\" y2=\""
           << fmt(sy(t)) << "\" stroke=\"black\"/>"
           << "<text x=\"" << fmt(kLeft - 8) << "\" y=\"" << fmt(sy(t) + 4) << "\" text-anchor=\"end\">"
           << fmt(std::fabs(t) < ys * 1e-9 ? 0.0 : t) << "</text>\n";
    }
    os << "<text x=\"" << fmt(kLeft + pw / 2) << "\" y=\"" << fmt(kHeight - 12) << "\" text-anchor=\"middle\">"
       << escape(x_label_) << "</text>\n";
    os << "<text x=\"18\" y=\"" << fmt(kTop + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
       << fmt(kTop + ph / 2) << ")\">" << escape(y_label_) << "</text>\n";

    os << "<g clip-path=\"url(#plot)\">\n<clipPath id=\"plot\"><rect x=\"" << kLeft << "\" y=\"" << kTop
       << "\" width=\"" << fmt(pw) << "\" height=\"" << fmt(ph) << "\"/></clipPath>\n";
    for (const auto& l : lines_) {
        os << "<polyline fill=\"none\" stroke=\"" << l.stroke << "\" stroke-width=\"" << fmt(l.width) << '"';
        if (l.dashed) os << " stroke-dasharray=\"4 3\"";
        os << " points=\"";
        for (const auto& [x, y] : l.pts) os << fmt(sx(x)) << ',' << fmt(sy(y)) << ' ';
        os << "\"/>\n";
    }
    for (const auto& m : marks_)
        os << "<circle cx=\"" << fmt(sx(m.x)) << "\" cy=\"" << fmt(sy(m.y)) << "\" r=\"" << fmt(m.r) << "\" fill=\""
           << m.fill << "\" stroke=\"" << m.stroke << "\"/>\n";
    os << "</g>\n";

    double ly = kTop + 10;
    for (const auto& e : legend_) {
        const double lx = kWidth - kRight + 15;
        os << "<circle cx=\"" << fmt(lx) << "\" cy=\"" << fmt(ly) << "\" r=\"4\" fill=\""
           << (e.hollow ? "none" : e.color) << "\" stroke=\"" << e.color << "\"/>"
           << "<text x=\"" << fmt(lx + 10) << "\" y=\"" << fmt(ly + 4) << "\">" << escape(e.label) << "</text>\n";
        ly += 18;
    }
    os << "</svg>\n";
    return os.str();
}

void SvgPlot::save(const fs::path& file) const {
    std::ofstream os(file, std::ios::trunc);
    if (!os) throw std::runtime_error("cannot write " + file.string());
    os << render();
}

std::string ramp_color(int n, int n_min, int n_max) {
    double f = n_max > n_min ? static_cast<double>(n - n_min) / (n_max - n_min) : 0.0;
    f = std::clamp(f, 0.0, 1.0);
    int r = static_cast<int>(std::lround(30 + 200 * f));
    int g = static_cast<int>(std::lround(60 + 40 * (1 - std::fabs(2 * f - 1))));
    int b = static_cast<int>(std::lround(220 - 190 * f));
    std::ostringstream os;
    os << '#' << std::hex << std::setfill('0') << std::setw(2) << r << std::setw(2) << g << std::setw(2) << b;
    return os.str();
}

namespace {

std::vector<const NRecord*> certified(const SweepResult& res, const SweepConfig& cfg) {
    std::vector<const NRecord*> out;
    std::vector<int> missing;
    for (int n = cfg.n_from; n <= cfg.n_to; n += cfg.step) {
        const NRecord* r = res.find(n);
        if (r && r->certified())
            out.push_back(r);
        else
            missing.push_back(n);
    }
    if (!missing.empty()) {
        std::string list;
        for (int n : missing) list += (list.empty() ? "" : ",") + std::to_string(n);
        throw std::runtime_error("figures need certified results for n=" + list);
    }
    return out;
}

double d(const Real& x) { return to_double(x); }

}  // namespace

std::vector<fs::path> emit_figures(const SweepResult& res, const SweepConfig& cfg) {
    std::vector<fs::path> written;
    if (cfg.figures.empty()) return written;
    const auto recs = certified(res, cfg);
    const int lo = cfg.n_from, hi = cfg.n_to;
    fs::create_directories(cfg.output_dir);
    auto emit = [&](const std::string& name, const SvgPlot& plot) {
        fs::path file = cfg.output_dir / (name + ".svg");
        plot.save(file);
        written.push_back(file);
    };

    if (cfg.figures.count("fig1")) {
        SvgPlot p("Homogeneous ground-state Bethe roots", "lambda", "N");
        for (const auto* r : recs)
            for (const auto& x : r->homogeneous.roots) p.point(d(x), r->n, "black", "none", 1.5);
        emit("fig1", p);
    }
    if (cfg.figures.count("fig2")) {
        SvgPlot p("Inhomogeneous Bethe roots", "Re u", "Im u");
        for (const auto* r : recs)
            for (const auto& u : r->inhomogeneous.roots) p.point(d(u.re), d(u.im), ramp_color(r->n, lo, hi), "none", 1.5);
        p.legend("N=" + std::to_string(lo), ramp_color(lo, lo, hi));
        p.legend("N=" + std::to_string(hi), ramp_color(hi, lo, hi));
        emit("fig2", p);
    }
    if (cfg.figures.count("fig3")) {
        SvgPlot p("Positive real roots: inhomogeneous vs homogeneous", "lambda", "N");
        for (const auto* r : recs) {
            for (const auto& x : r->homogeneous.roots)
                if (x > 0) p.point(d(x), r->n, "none", "#999999", 3.0);
            for (std::size_t i = 0; i < r->inhomogeneous.roots.size(); ++i)
                if (r->labels[i] == RootFamily::real && r->inhomogeneous.roots[i].re > 0)
                    p.point(d(r->inhomogeneous.roots[i].re), r->n, "black", "none", 1.5);
        }
        p.legend("inhomogeneous", "black");
        p.legend("homogeneous", "#999999", true);
        emit("fig3", p);
    }
    if (cfg.figures.count("fig4")) {
        SvgPlot p("Imaginary Bethe roots", "Im u", "N");
        for (const auto* r : recs)
            for (std::size_t i = 0; i < r->inhomogeneous.roots.size(); ++i)
                if (r->labels[i] == RootFamily::imaginary) p.point(d(r->inhomogeneous.roots[i].im), r->n, "black");
        emit("fig4", p);
    }
    if (cfg.figures.count("fig5")) {
        SvgPlot p("Number of imaginary roots", "N", "N_I");
        std::vector<std::pair<double, double>> steps, lower, upper;
        for (std::size_t i = 0; i < recs.size(); ++i) {
            const double n = recs[i]->n;
            const double ni = recs[i]->report.n_imag;
            steps.emplace_back(n, ni);
            if (i + 1 < recs.size()) steps.emplace_back(recs[i + 1]->n, ni);
            p.point(n, ni, "black");
        }
        lower = {{lo, lo / 8.0}, {hi, hi / 8.0}};
        upper = {{lo, lo / 8.0 + 4.5}, {hi, hi / 8.0 + 4.5}};
        p.polyline(steps, "black");
        p.polyline(lower, "#1f77b4", true);
        p.polyline(upper, "#d62728", true);
        p.legend("N_I", "black");
        p.legend("N/8", "#1f77b4");
        p.legend("N/8 + 9/2", "#d62728");
        emit("fig5", p);
    }
    if (cfg.figures.count("fig6")) {
        SvgPlot p("Complex roots, upper right quadrant", "Re u", "Im u");
        for (const auto* r : recs) {
            std::vector<std::pair<double, double>> arc;
            for (std::size_t i = 0; i < r->inhomogeneous.roots.size(); ++i) {
                const auto& u = r->inhomogeneous.roots[i];
                if (r->labels[i] == RootFamily::arc && u.re > 0 && u.im > 0) arc.emplace_back(d(u.re), d(u.im));
            }
            if (arc.empty()) continue;
            std::sort(arc.begin(), arc.end(), [](auto a, auto b) { return a.second < b.second; });
            const std::string color = ramp_color(r->n, lo, hi);
            p.polyline(arc, color, true);
            for (const auto& [x, y] : arc) p.point(x, y, color);
        }
        emit("fig6", p);
    }
    return written;
}

}  // namespace tqroots
