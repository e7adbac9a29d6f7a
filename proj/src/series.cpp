#include "mfscale/series.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mfscale/error.hpp"

namespace mfscale {

namespace {

void check_values(std::span<const double> values) {
    if (values.size() < 2) {
        throw InsufficientDataError("series needs at least 2 samples, got " + std::to_string(values.size()));
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            throw DomainError("series value at position " + std::to_string(i) + " is not finite");
        }
    }
}

}  // namespace

Series::Series(std::vector<double> values, std::string label)
    : timestamps_(values.size()), values_(std::move(values)), label_(std::move(label)) {
    std::iota(timestamps_.begin(), timestamps_.end(), std::int64_t{0});
    check_values(values_);
}

Series::Series(std::vector<std::int64_t> timestamps, std::vector<double> values, std::string label)
    : timestamps_(std::move(timestamps)), values_(std::move(values)), label_(std::move(label)) {
    if (timestamps_.size() != values_.size()) {
        throw DomainError("timestamp count " + std::to_string(timestamps_.size()) + " != value count " +
                          std::to_string(values_.size()));
    }
    check_values(values_);
    for (std::size_t i = 1; i < timestamps_.size(); ++i) {
        if (timestamps_[i] <= timestamps_[i - 1]) {
            throw DomainError("timestamps not strictly increasing at position " + std::to_string(i));
        }
    }
}

ReturnSet compute_returns(const Series& series, std::size_t lag, IncrementMode mode) {
    const std::size_t n = series.size();
    if (lag < 1 || lag > n - 1) {
        throw DomainError("lag " + std::to_string(lag) + " outside valid interval [1, " + std::to_string(n - 1) + "]");
    }
    const auto p = series.values();
    ReturnSet out;
    out.lag = lag;
    out.origin_length = n;
    const std::size_t stride = mode == IncrementMode::overlapping ? 1 : lag;
    out.values.reserve((n - lag) / stride + 1);
    for (std::size_t t = 0; t + lag < n; t += stride) {
        out.values.push_back(p[t + lag] - p[t]);
    }
    return out;
}

SummaryStats summary_stats(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 4) {
        throw InsufficientDataError("summary statistics need at least 4 values, got " + std::to_string(n));
    }
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    if (*lo == *hi) {
        throw DegenerateError("zero variance: all " + std::to_string(n) + " values are equal");
    }

    const double nd = static_cast<double>(n);
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / nd;
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double v : values) {
        const double d = v - mean;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    m2 /= nd;
    m3 /= nd;
    m4 /= nd;

    SummaryStats s;
    s.count = n;
    s.mean = mean;
    s.std_dev = std::sqrt(m2);
    s.skewness = m3 / (m2 * s.std_dev);
    s.kurtosis = m4 / (m2 * m2);
    return s;
}

std::vector<WindowStats> rolling_stats(std::span<const double> values, std::size_t window, std::size_t step) {
    if (window < 2 || window > values.size()) {
        throw DomainError("window " + std::to_string(window) + " outside valid interval [2, " +
                          std::to_string(values.size()) + "]");
    }
    if (step < 1) {
        throw DomainError("rolling step must be >= 1");
    }
    std::vector<WindowStats> out;
    const double w = static_cast<double>(window);
    for (std::size_t start = 0; start + window <= values.size(); start += step) {
        const auto seg = values.subspan(start, window);
        const double mean = std::accumulate(seg.begin(), seg.end(), 0.0) / w;
        double var = 0.0;
        for (double v : seg) var += (v - mean) * (v - mean);
        out.push_back({start, mean, var / w});
    }
    return out;
}

std::vector<WindowStats> rolling_stats(const Series& series, std::size_t window, std::size_t step) {
    return rolling_stats(series.values(), window, step);
}

}  // namespace mfscale
