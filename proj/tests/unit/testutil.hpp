#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

// Test-side reference data, drawn from the standard library so that the
// library's own generators are not used to check themselves.
namespace testutil {

inline std::vector<double> normal_noise(std::uint64_t seed, std::size_t n, double sd = 1.0) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> dist(0.0, sd);
    std::vector<double> v(n);
    for (auto& x : v) x = dist(gen);
    return v;
}

inline std::vector<double> cumsum(const std::vector<double>& v) {
    std::vector<double> out(v.size());
    std::partial_sum(v.begin(), v.end(), out.begin());
    return out;
}

inline std::vector<double> random_walk(std::uint64_t seed, std::size_t n) { return cumsum(normal_noise(seed, n)); }

inline double mean(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / v.size(); }

inline double variance(const std::vector<double>& v) {
    const double m = mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s / v.size();
}

inline double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const auto n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

/// Generalized Hurst exponent of the binomial measure with multiplier a.
inline double cascade_h(double a, double q) { return 1.0 / q - std::log2(std::pow(a, q) + std::pow(1.0 - a, q)) / q; }

/// Slope of an ordinary least-squares line.
inline double ols_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double mx = mean(x);
    const double my = mean(y);
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}

inline bool rel_close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b)); }

}  // namespace testutil
