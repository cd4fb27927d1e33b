#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace sumprod {

/// Least-squares line through (log x, log y).
struct LogLogFit {
    double slope = 0;
    double intercept = 0;
    double rms_residual = 0;  // in log units
    std::size_t points = 0;
};

inline LogLogFit fit_loglog(std::span<const double> x, std::span<const double> y) {
    LogLogFit fit;
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
        if (x[i] > 0 && y[i] > 0) {
            lx.push_back(std::log(x[i]));
            ly.push_back(std::log(y[i]));
        }
    }
    fit.points = lx.size();
    if (fit.points < 2) return fit;
    const double n = static_cast<double>(fit.points);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0) return fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double r = ly[i] - (fit.slope * lx[i] + fit.intercept);
        ss += r * r;
    }
    fit.rms_residual = std::sqrt(ss / n);
    return fit;
}

}  // namespace sumprod
