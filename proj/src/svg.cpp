#include "aeod/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "aeod/errors.hpp"

namespace aeod {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 520.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 24.0;
constexpr double kMarginTop = 44.0;
constexpr double kMarginBottom = 56.0;

std::string escape_xml(const std::string& s) {
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

std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string tick_text(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

} // namespace

void write_svg_plot(const std::string& path, const std::string& title,
                    const std::string& x_label, const std::string& y_label,
                    const std::vector<SvgSeries>& series) {
    double lo_x = std::numeric_limits<double>::infinity(), hi_x = -lo_x;
    double lo_y = lo_x, hi_y = hi_x;
    for (const SvgSeries& s : series) {
        if (s.x.size() != s.y.size())
            throw ContractViolation("write_svg_plot: series x/y lengths differ");
        for (double v : s.x) {
            lo_x = std::min(lo_x, v);
            hi_x = std::max(hi_x, v);
        }
        for (double v : s.y) {
            lo_y = std::min(lo_y, v);
            hi_y = std::max(hi_y, v);
        }
    }
    if (!(lo_x <= hi_x)) {
        lo_x = 0.0;
        hi_x = 1.0;
        lo_y = 0.0;
        hi_y = 1.0;
    }
    auto pad = [](double& lo, double& hi) {
        const double span = hi - lo;
        const double p = span > 0.0 ? 0.05 * span : 0.5;
        lo -= p;
        hi += p;
    };
    pad(lo_x, hi_x);
    pad(lo_y, hi_y);

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    auto map_x = [&](double v) { return kMarginLeft + (v - lo_x) / (hi_x - lo_x) * plot_w; };
    auto map_y = [&](double v) {
        return kMarginTop + plot_h - (v - lo_y) / (hi_y - lo_y) * plot_h;
    };

    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path);

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    out << "<text x=\"" << num(kWidth / 2) << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << escape_xml(title) << "</text>\n";

    // Frame and ticks.
    out << "<rect x=\"" << num(kMarginLeft) << "\" y=\"" << num(kMarginTop) << "\" width=\""
        << num(plot_w) << "\" height=\"" << num(plot_h)
        << "\" fill=\"none\" stroke=\"#444444\"/>\n";
    const int n_ticks = 5;
    for (int t = 0; t <= n_ticks; ++t) {
        const double fx = lo_x + (hi_x - lo_x) * t / n_ticks;
        const double px = map_x(fx);
        out << "<line x1=\"" << num(px) << "\" y1=\"" << num(kMarginTop + plot_h) << "\" x2=\""
            << num(px) << "\" y2=\"" << num(kMarginTop + plot_h + 5) << "\" stroke=\"#444444\"/>\n"
            << "<text x=\"" << num(px) << "\" y=\"" << num(kMarginTop + plot_h + 20)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << tick_text(fx) << "</text>\n";
        const double fy = lo_y + (hi_y - lo_y) * t / n_ticks;
        const double py = map_y(fy);
        out << "<line x1=\"" << num(kMarginLeft - 5) << "\" y1=\"" << num(py) << "\" x2=\""
            << num(kMarginLeft) << "\" y2=\"" << num(py) << "\" stroke=\"#444444\"/>\n"
            << "<text x=\"" << num(kMarginLeft - 8) << "\" y=\"" << num(py + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << tick_text(fy) << "</text>\n";
    }
    out << "<text x=\"" << num(kMarginLeft + plot_w / 2) << "\" y=\"" << num(kHeight - 14)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
        << escape_xml(x_label) << "</text>\n";
    out << "<text x=\"18\" y=\"" << num(kMarginTop + plot_h / 2)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
        << "transform=\"rotate(-90 18 " << num(kMarginTop + plot_h / 2) << ")\">"
        << escape_xml(y_label) << "</text>\n";

    for (const SvgSeries& s : series) {
        if (s.radius > 0.0) {
            for (std::size_t i = 0; i < s.x.size(); ++i)
                out << "<circle cx=\"" << num(map_x(s.x[i])) << "\" cy=\"" << num(map_y(s.y[i]))
                    << "\" r=\"" << num(s.radius) << "\" fill=\"" << s.color
                    << "\" fill-opacity=\"0.75\"/>\n";
        } else if (!s.x.empty()) {
            out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.8\" points=\"";
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                if (i > 0) out << ' ';
                out << num(map_x(s.x[i])) << ',' << num(map_y(s.y[i]));
            }
            out << "\"/>\n";
        }
    }

    double legend_y = kMarginTop + 14.0;
    for (const SvgSeries& s : series) {
        if (s.label.empty()) continue;
        const double lx = kMarginLeft + plot_w - 150.0;
        out << "<rect x=\"" << num(lx) << "\" y=\"" << num(legend_y - 9) << "\" width=\"10\" "
            << "height=\"10\" fill=\"" << s.color << "\"/>\n"
            << "<text x=\"" << num(lx + 16) << "\" y=\"" << num(legend_y)
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape_xml(s.label)
            << "</text>\n";
        legend_y += 16.0;
    }

    out << "</svg>\n";
    if (!out) throw DataError("write failed for " + path);
}

} // namespace aeod
