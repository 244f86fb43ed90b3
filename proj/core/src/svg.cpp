#include "lie/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "lie/errors.hpp"

namespace lie {

namespace {

constexpr double kW = 640.0, kH = 460.0;
constexpr double kL = 70.0, kR = 20.0, kT = 40.0, kB = 50.0;

const char *color(std::size_t i) {
    static const char *palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b"};
    return palette[i % 5];
}

std::string fmt(double v, const char *spec = "%.2f") {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string escape(const std::string &s) {
    std::string out;
    for (char c : s) {
        if (c == '&') out += "&amp;";
        else if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else out += c;
    }
    return out;
}

struct Axis {
    double lo = 0.0, hi = 1.0;
    double to_px(double v, double px_lo, double px_hi) const {
        double t = hi > lo ? (v - lo) / (hi - lo) : 0.5;
        return px_lo + t * (px_hi - px_lo);
    }
};

void open_svg(std::ofstream &f, const std::string &title) {
    f << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(kW, "%.0f")
      << "\" height=\"" << fmt(kH, "%.0f") << "\" viewBox=\"0 0 " << fmt(kW, "%.0f") << " "
      << fmt(kH, "%.0f") << "\">\n";
    f << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    f << "<text x=\"" << fmt(kW / 2) << "\" y=\"22\" text-anchor=\"middle\" "
         "font-family=\"monospace\" font-size=\"14\">"
      << escape(title) << "</text>\n";
}

void axis_frame(std::ofstream &f, const Axis &ax, const Axis &ay, const std::string &xlabel,
                const std::string &ylabel, bool log_ticks) {
    f << "<rect x=\"" << fmt(kL) << "\" y=\"" << fmt(kT) << "\" width=\"" << fmt(kW - kL - kR)
      << "\" height=\"" << fmt(kH - kT - kB)
      << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        double tx = ax.lo + (ax.hi - ax.lo) * i / 4.0;
        double px = ax.to_px(tx, kL, kW - kR);
        double label = log_ticks ? std::pow(10.0, tx) : tx;
        f << "<line x1=\"" << fmt(px) << "\" y1=\"" << fmt(kH - kB) << "\" x2=\"" << fmt(px)
          << "\" y2=\"" << fmt(kH - kB + 5) << "\" stroke=\"black\"/>\n";
        f << "<text x=\"" << fmt(px) << "\" y=\"" << fmt(kH - kB + 18)
          << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"10\">"
          << fmt(label, "%.3g") << "</text>\n";
        double ty = ay.lo + (ay.hi - ay.lo) * i / 4.0;
        double py = ay.to_px(ty, kH - kB, kT);
        double ylab = log_ticks ? std::pow(10.0, ty) : ty;
        f << "<line x1=\"" << fmt(kL - 5) << "\" y1=\"" << fmt(py) << "\" x2=\"" << fmt(kL)
          << "\" y2=\"" << fmt(py) << "\" stroke=\"black\"/>\n";
        f << "<text x=\"" << fmt(kL - 8) << "\" y=\"" << fmt(py + 3)
          << "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"10\">"
          << fmt(ylab, "%.3g") << "</text>\n";
    }
    f << "<text x=\"" << fmt((kL + kW - kR) / 2) << "\" y=\"" << fmt(kH - 12)
      << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"12\">" << escape(xlabel)
      << "</text>\n";
    f << "<text x=\"16\" y=\"" << fmt((kT + kH - kB) / 2)
      << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"12\" transform=\"rotate(-90 16 "
      << fmt((kT + kH - kB) / 2) << ")\">" << escape(ylabel) << "</text>\n";
}

}  // namespace

void write_loglog_svg(const std::string &path, const std::string &title,
                      const std::string &xlabel, const std::string &ylabel,
                      const std::vector<PlotSeries> &series, const std::vector<FitLine> &fits) {
    // collect log10 extents over positive points
    double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo;
    double ylo = xlo, yhi = -xlo;
    for (const PlotSeries &s : series)
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (!(s.x[i] > 0.0) || !(s.y[i] > 0.0)) continue;
            double lx = std::log10(s.x[i]), ly = std::log10(s.y[i]);
            xlo = std::min(xlo, lx), xhi = std::max(xhi, lx);
            ylo = std::min(ylo, ly), yhi = std::max(yhi, ly);
        }
    if (!(xlo <= xhi)) throw UsageError("log-log plot needs at least one positive point");
    if (xhi - xlo < 1e-9) xlo -= 0.5, xhi += 0.5;
    if (yhi - ylo < 1e-9) ylo -= 0.5, yhi += 0.5;
    double mx = 0.05 * (xhi - xlo), my = 0.05 * (yhi - ylo);
    Axis ax{xlo - mx, xhi + mx}, ay{ylo - my, yhi + my};

    std::ofstream f(path);
    if (!f) throw UsageError("cannot write plot file '" + path + "'");
    open_svg(f, title);
    axis_frame(f, ax, ay, xlabel, ylabel, true);

    const double ln10 = std::log(10.0);
    for (std::size_t k = 0; k < fits.size(); ++k) {
        // ln y = m ln x + b  =>  log10 y = m log10 x + b / ln 10
        const FitLine &fl = fits[k];
        double y1 = fl.slope * ax.lo + fl.intercept / ln10;
        double y2 = fl.slope * ax.hi + fl.intercept / ln10;
        f << "<line x1=\"" << fmt(ax.to_px(ax.lo, kL, kW - kR)) << "\" y1=\""
          << fmt(ay.to_px(y1, kH - kB, kT)) << "\" x2=\"" << fmt(ax.to_px(ax.hi, kL, kW - kR))
          << "\" y2=\"" << fmt(ay.to_px(y2, kH - kB, kT)) << "\" stroke=\"" << color(k + 3)
          << "\" stroke-width=\"1\" stroke-dasharray=\"6 4\"/>\n";
        f << "<text x=\"" << fmt(kW - kR - 4) << "\" y=\"" << fmt(kT + 14 + 14.0 * double(k))
          << "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"10\" fill=\""
          << color(k + 3) << "\">" << escape(fl.name) << " slope=" << fmt(fl.slope, "%.3f")
          << "</text>\n";
    }

    for (std::size_t k = 0; k < series.size(); ++k) {
        const PlotSeries &s = series[k];
        std::string pts;
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (!(s.x[i] > 0.0) || !(s.y[i] > 0.0)) continue;
            double px = ax.to_px(std::log10(s.x[i]), kL, kW - kR);
            double py = ay.to_px(std::log10(s.y[i]), kH - kB, kT);
            pts += fmt(px) + "," + fmt(py) + " ";
            f << "<circle cx=\"" << fmt(px) << "\" cy=\"" << fmt(py) << "\" r=\"2.5\" fill=\""
              << color(k) << "\"/>\n";
        }
        if (!pts.empty()) pts.pop_back();
        f << "<polyline points=\"" << pts << "\" fill=\"none\" stroke=\"" << color(k)
          << "\" stroke-width=\"1\"/>\n";
        f << "<text x=\"" << fmt(kL + 6) << "\" y=\"" << fmt(kT + 14 + 14.0 * double(k))
          << "\" font-family=\"monospace\" font-size=\"10\" fill=\"" << color(k) << "\">"
          << escape(s.name) << "</text>\n";
    }
    f << "</svg>\n";
}

void write_bars_svg(const std::string &path, const std::string &title,
                    const std::vector<std::string> &labels, const std::vector<double> &values) {
    if (labels.size() != values.size()) throw UsageError("bar plot labels/values mismatch");
    if (values.empty()) throw UsageError("bar plot needs at least one bar");
    double vhi = 0.0, vlo = 0.0;
    for (double v : values) vhi = std::max(vhi, v), vlo = std::min(vlo, v);
    if (vhi == vlo) vhi = vlo + 1.0;
    Axis ay{vlo, vhi * 1.1};

    std::ofstream f(path);
    if (!f) throw UsageError("cannot write plot file '" + path + "'");
    open_svg(f, title);
    f << "<line x1=\"" << fmt(kL) << "\" y1=\"" << fmt(kH - kB) << "\" x2=\"" << fmt(kW - kR)
      << "\" y2=\"" << fmt(kH - kB) << "\" stroke=\"black\"/>\n";
    const double span = kW - kL - kR;
    const double slot = span / double(values.size());
    const double bw = slot * 0.6;
    for (std::size_t i = 0; i < values.size(); ++i) {
        double x = kL + slot * (double(i) + 0.2);
        double y0 = ay.to_px(0.0, kH - kB, kT);
        double y1 = ay.to_px(values[i], kH - kB, kT);
        double top = std::min(y0, y1), h = std::abs(y0 - y1);
        f << "<rect x=\"" << fmt(x) << "\" y=\"" << fmt(top) << "\" width=\"" << fmt(bw)
          << "\" height=\"" << fmt(h) << "\" fill=\"" << color(0) << "\"/>\n";
        f << "<text x=\"" << fmt(x + bw / 2) << "\" y=\"" << fmt(top - 4)
          << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"10\">"
          << fmt(values[i], "%.4g") << "</text>\n";
        f << "<text x=\"" << fmt(x + bw / 2) << "\" y=\"" << fmt(kH - kB + 16)
          << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"10\">"
          << escape(labels[i]) << "</text>\n";
    }
    f << "</svg>\n";
}

}  // namespace lie
