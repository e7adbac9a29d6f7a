#pragma once

#include <cstddef>
#include <span>

namespace mfscale {

/// Closed interval on the abscissa used to select points for a fit.
struct FitRange {
    double lo = 0.0;
    double hi = 0.0;

    bool contains(double x) const noexcept { return x >= lo && x <= hi; }
    bool operator==(const FitRange&) const = default;
};

struct LogLogFit {
    double slope = 0.0;
    double intercept = 0.0;  // natural-log intercept
    double std_error = 0.0;  // standard error of the slope
    std::size_t points = 0;
};

/// Ordinary least squares of ln(y) on ln(x) over the points with x inside
/// `range`. Requires at least 3 such points, all strictly positive.
LogLogFit loglog_fit(std::span<const double> xs, std::span<const double> ys, FitRange range);

/// Same, using every point.
LogLogFit loglog_fit(std::span<const double> xs, std::span<const double> ys);

}  // namespace mfscale
