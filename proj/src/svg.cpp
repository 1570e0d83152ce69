#include "onm/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace onm {

namespace {

constexpr double width = 640.0;
constexpr double height = 420.0;
constexpr double left = 70.0;
constexpr double right = 170.0;
constexpr double top = 40.0;
constexpr double bottom = 55.0;

constexpr const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                   "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

std::string escape(const std::string& s)
{
    std::string out;
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

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void add(double v)
    {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }

    void finish()
    {
        if (!std::isfinite(lo)) {
            lo = 0.0;
            hi = 1.0;
        }
        if (hi - lo < 1e-12) {
            lo -= 0.5;
            hi += 0.5;
        }
    }
};

bool usable(double x, double y, bool log_x)
{
    return std::isfinite(x) && std::isfinite(y) && (!log_x || x > 0.0);
}

} // namespace

std::string render_svg(const LinePlot& plot)
{
    Range xr, yr;
    for (const auto& s : plot.series) {
        if (s.x.size() != s.y.size()) {
            throw std::invalid_argument("plot series '" + s.label + "' has mismatched x/y lengths");
        }
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (usable(s.x[i], s.y[i], plot.log_x)) {
                xr.add(plot.log_x ? std::log10(s.x[i]) : s.x[i]);
                yr.add(s.y[i]);
            }
        }
    }
    xr.finish();
    yr.finish();

    const double pw = width - left - right;
    const double ph = height - top - bottom;
    auto px = [&](double x) {
        const double v = plot.log_x ? std::log10(x) : x;
        return left + (v - xr.lo) / (xr.hi - xr.lo) * pw;
    };
    auto py = [&](double y) { return top + (yr.hi - y) / (yr.hi - yr.lo) * ph; };

    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width) << "\" height=\""
      << fmt(height) << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o << "<text x=\"" << fmt(width / 2) << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">"
      << escape(plot.title) << "</text>\n";
    o << "<rect x=\"" << fmt(left) << "\" y=\"" << fmt(top) << "\" width=\"" << fmt(pw)
      << "\" height=\"" << fmt(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";

    for (int k = 0; k <= 5; ++k) {
        const double fx = xr.lo + (xr.hi - xr.lo) * k / 5.0;
        const double x = left + pw * k / 5.0;
        const double xv = plot.log_x ? std::pow(10.0, fx) : fx;
        o << "<line x1=\"" << fmt(x) << "\" y1=\"" << fmt(top) << "\" x2=\"" << fmt(x) << "\" y2=\""
          << fmt(top + ph) << "\" stroke=\"#dddddd\"/>\n";
        o << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(top + ph + 15) << "\" text-anchor=\"middle\">"
          << tick_label(xv) << "</text>\n";
        const double fy = yr.lo + (yr.hi - yr.lo) * k / 5.0;
        const double y = top + ph - ph * k / 5.0;
        o << "<line x1=\"" << fmt(left) << "\" y1=\"" << fmt(y) << "\" x2=\"" << fmt(left + pw)
          << "\" y2=\"" << fmt(y) << "\" stroke=\"#dddddd\"/>\n";
        o << "<text x=\"" << fmt(left - 5) << "\" y=\"" << fmt(y + 4) << "\" text-anchor=\"end\">"
          << tick_label(fy) << "</text>\n";
    }
    o << "<text x=\"" << fmt(left + pw / 2) << "\" y=\"" << fmt(height - 15)
      << "\" text-anchor=\"middle\">" << escape(plot.x_label) << "</text>\n";
    o << "<text x=\"15\" y=\"" << fmt(top + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 15 "
      << fmt(top + ph / 2) << ")\">" << escape(plot.y_label) << "</text>\n";

    for (std::size_t s = 0; s < plot.series.size(); ++s) {
        const auto& series = plot.series[s];
        const char* color = palette[s % std::size(palette)];
        std::string points;
        for (std::size_t i = 0; i < series.x.size(); ++i) {
            if (usable(series.x[i], series.y[i], plot.log_x)) {
                points += fmt(px(series.x[i])) + "," + fmt(py(series.y[i])) + " ";
            }
        }
        if (!points.empty()) {
            points.pop_back();
            o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\""
              << points << "\"/>\n";
        }
        const double ly = top + 14.0 * static_cast<double>(s) + 8.0;
        o << "<line x1=\"" << fmt(left + pw + 10) << "\" y1=\"" << fmt(ly) << "\" x2=\""
          << fmt(left + pw + 30) << "\" y2=\"" << fmt(ly) << "\" stroke=\"" << color
          << "\" stroke-width=\"2\"/>\n";
        o << "<text x=\"" << fmt(left + pw + 35) << "\" y=\"" << fmt(ly + 4) << "\">"
          << escape(series.label) << "</text>\n";
    }
    o << "</svg>\n";
    return o.str();
}

void write_svg(const std::filesystem::path& path, const LinePlot& plot)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write '" + path.string() + "'");
    }
    out << render_svg(plot);
}

} // namespace onm
