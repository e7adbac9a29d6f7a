#pragma once

// Multifractal detrended fluctuation analysis.
//
// The signal is integrated into a mean-removed profile, cut into
// non-overlapping segments of length s from both ends, detrended segment by
// segment with a least-squares polynomial, and the segment variances are
// combined into the q-th order fluctuation function F_q(s). Scaling
// exponents alpha(q) are the log-log slopes of F_q(s) against s; alpha(2)
// is the Hurst exponent.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "mfscale/fit.hpp"

namespace mfscale {

struct Profile {
    std::vector<double> values;  // Y(1..N), stored 0-based
    std::size_t source_length = 0;
};

/// Y(i) = sum_{k<=i} (x_k - mean(x)).
Profile build_profile(std::span<const double> values);

/// Variances of the 2*N_s detrended segments at one scale. Entries
/// [0, N_s) walk forward from the start of the profile, entries
/// [N_s, 2 N_s) walk backward from its end.
std::vector<double> segment_variances(const Profile& profile, std::size_t scale, unsigned poly_order = 1);

/// q-th order power mean of the segment fluctuations. q = 0 is rejected
/// unless `q0_log_mode` is set, in which case the geometric-mean limit is used.
double fluctuation_function(std::span<const double> variances, double q, bool q0_log_mode = false);

struct FluctuationSurface {
    std::vector<std::size_t> scales;
    std::vector<double> orders;
    std::vector<double> f_values;  // row-major: [scale index][order index]
    std::vector<std::size_t> segments_per_scale;
    unsigned poly_order = 1;

    double f(std::size_t scale_index, std::size_t order_index) const {
        return f_values[scale_index * orders.size() + order_index];
    }
    /// F_q(s) for one order across all scales.
    std::vector<double> column(std::size_t order_index) const;
};

struct MfdfaOptions {
    unsigned poly_order = 1;
    bool q0_log_mode = false;
};

FluctuationSurface mfdfa_surface(std::span<const double> values, std::span<const std::size_t> scales,
                                 std::span<const double> orders, const MfdfaOptions& options = {});

/// Log-spaced integer scales in [s_min, s_max]; s_max = 0 means N/4.
/// Scales that would leave fewer than 4 segments are dropped.
std::vector<std::size_t> default_scales(std::size_t length, std::size_t count = 20, std::size_t s_min = 10,
                                        std::size_t s_max = 0);

/// {-4, -3, -2, -1, -0.5, 0.5, 1, 2, 3, 4}
std::vector<double> default_q_orders();

struct ScalingExponents {
    std::vector<double> orders;
    std::vector<double> alpha;
    std::vector<double> std_error;
    FitRange fit_range;

    /// alpha(2); throws DomainError when q = 2 was not evaluated.
    double hurst() const;
    double hurst_std_error() const;
};

ScalingExponents fit_exponents(const FluctuationSurface& surface, FitRange fit_range = {10, 100});

struct BreakOptions {
    std::size_t min_points = 3;     // scales required on each side of the knee
    double slope_threshold = 0.1;   // minimum slope change reported as a break
};

struct ScalingBreak {
    double scale = 0.0;  // where the two fitted lines intersect
    double slope_below = 0.0;
    double slope_above = 0.0;
    double residual = 0.0;  // total squared log residual of the two-line fit
};

/// Two-segment log-log fit of F_q(s). Returns the knee when the slopes
/// differ by more than the threshold.
std::optional<ScalingBreak> detect_scaling_break(const FluctuationSurface& surface, double q,
                                                 const BreakOptions& options = {});

}  // namespace mfscale
