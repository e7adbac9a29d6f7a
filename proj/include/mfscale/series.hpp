#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace mfscale {

/// Ordered scalar signal. Timestamps are ordinal day indices and must be
/// strictly increasing; all values finite; at least two samples.
class Series {
public:
    /// Positional timestamps 0..N-1.
    explicit Series(std::vector<double> values, std::string label = {});
    Series(std::vector<std::int64_t> timestamps, std::vector<double> values, std::string label = {});

    std::size_t size() const noexcept { return values_.size(); }
    std::span<const double> values() const noexcept { return values_; }
    std::span<const std::int64_t> timestamps() const noexcept { return timestamps_; }
    const std::string& label() const noexcept { return label_; }

    bool operator==(const Series&) const = default;

private:
    std::vector<std::int64_t> timestamps_;
    std::vector<double> values_;
    std::string label_;
};

/// Increments p(t+lag) - p(t) at a fixed positional lag.
struct ReturnSet {
    std::size_t lag = 1;
    std::vector<double> values;
    std::size_t origin_length = 0;
};

enum class IncrementMode {
    overlapping,     // t advances by one sample; N - lag increments
    nonoverlapping,  // t advances by lag; floor((N - 1) / lag) increments
};

/// Lags count sample positions, not calendar days.
ReturnSet compute_returns(const Series& series, std::size_t lag,
                          IncrementMode mode = IncrementMode::overlapping);

struct SummaryStats {
    double mean = 0.0;
    double std_dev = 0.0;   // population (1/N) normalization
    double skewness = 0.0;
    double kurtosis = 0.0;  // raw convention, Gaussian = 3
    std::size_t count = 0;
};

SummaryStats summary_stats(std::span<const double> values);

struct WindowStats {
    std::size_t start = 0;
    double mean = 0.0;
    double variance = 0.0;
};

/// Mean and population variance in windows of `window` samples advanced by `step`.
std::vector<WindowStats> rolling_stats(std::span<const double> values, std::size_t window, std::size_t step);
std::vector<WindowStats> rolling_stats(const Series& series, std::size_t window, std::size_t step);

}  // namespace mfscale
