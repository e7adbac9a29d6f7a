#include "mfscale/fit.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "mfscale/error.hpp"

namespace mfscale {

LogLogFit loglog_fit(std::span<const double> xs, std::span<const double> ys, FitRange range) {
    if (xs.size() != ys.size()) {
        throw DomainError("loglog_fit: " + std::to_string(xs.size()) + " abscissae but " + std::to_string(ys.size()) +
                          " ordinates");
    }
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!range.contains(xs[i])) continue;
        if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) {
            throw DomainError("loglog_fit: nonpositive point (" + std::to_string(xs[i]) + ", " +
                              std::to_string(ys[i]) + ")");
        }
        lx.push_back(std::log(xs[i]));
        ly.push_back(std::log(ys[i]));
    }
    const std::size_t n = lx.size();
    if (n < 3) {
        throw FitRangeError("loglog_fit: " + std::to_string(n) + " points in [" + std::to_string(range.lo) + ", " +
                            std::to_string(range.hi) + "], need at least 3");
    }

    const double nd = static_cast<double>(n);
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= nd;
    my /= nd;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (sxx == 0.0) {
        throw FitRangeError("loglog_fit: all abscissae in range coincide");
    }

    LogLogFit fit;
    fit.points = n;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ssr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ly[i] - (fit.intercept + fit.slope * lx[i]);
        ssr += r * r;
    }
    fit.std_error = std::sqrt(ssr / (nd - 2.0) / sxx);
    return fit;
}

LogLogFit loglog_fit(std::span<const double> xs, std::span<const double> ys) {
    return loglog_fit(xs, ys, {-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()});
}

}  // namespace mfscale
