#pragma once

#include <string>
#include <utility>
#include <vector>

namespace lie {

struct PlotSeries {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

// straight reference line in log space: ln y = slope * ln x + intercept
struct FitLine {
    std::string name;
    double slope = 0.0;
    double intercept = 0.0;
};

// log-log scatter + polyline plot with optional fitted reference lines.
// all data must be strictly positive; nonpositive points are skipped.
// output is deterministic for identical input.
void write_loglog_svg(const std::string &path, const std::string &title,
                      const std::string &xlabel, const std::string &ylabel,
                      const std::vector<PlotSeries> &series,
                      const std::vector<FitLine> &fits = {});

// labeled vertical bars with value captions; values may be any sign.
void write_bars_svg(const std::string &path, const std::string &title,
                    const std::vector<std::string> &labels,
                    const std::vector<double> &values);

}  // namespace lie
