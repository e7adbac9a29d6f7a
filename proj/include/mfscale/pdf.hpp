#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "mfscale/series.hpp"

namespace mfscale {

/// Histogram density of increments normalized by their standard deviation.
///
/// `bin_centers`, `bin_width` and `density` are in normalized units; the
/// physical increment at a bin center is `center * normalization` and the
/// physical density is `density / normalization`.
struct EmpiricalPdf {
    std::size_t lag = 1;
    std::vector<double> bin_centers;
    std::vector<double> density;
    std::vector<std::size_t> bin_counts;
    double bin_width = 0.0;
    double normalization = 1.0;  // standard deviation of the increments
    std::size_t sample_count = 0;
    /// Fraction of samples that fell inside the histogram range. 1 for a
    /// full-range histogram; the density integrates to this value.
    double coverage = 1.0;

    double physical_center(std::size_t i) const { return bin_centers[i] * normalization; }
    double physical_density(std::size_t i) const { return density[i] / normalization; }
    /// Index of the bin whose half-open interval contains zero, if any.
    std::optional<std::size_t> bin_containing_zero() const;
};

/// ceil(2 n^(1/3)) clamped to [25, 201].
std::size_t default_bin_count(std::size_t sample_count);

/// Uniform histogram over [min, max] of the normalized increments, or over
/// [-window, window] when `window` is given (in standard deviations). Samples
/// outside a window still count toward the total, so the windowed density is
/// an estimate of the true density rather than a conditional one.
EmpiricalPdf estimate_pdf(const ReturnSet& returns, std::size_t bin_count, std::optional<double> window = {});

/// Self-similarity rescaling: abscissae times lambda^-alpha, densities times
/// lambda^alpha. Area is preserved.
EmpiricalPdf rescale_pdf(const EmpiricalPdf& pdf, double alpha, double lambda);

struct CollapseOptions {
    double threshold = 0.05;       // max log-density MSE counted as collapsed
    double central_width = 3.0;    // comparison region, in reference standard deviations
    std::size_t min_count = 50;    // bins with fewer samples are ignored
};

struct LagDistance {
    std::size_t lag = 0;
    double distance = 0.0;
    std::size_t points = 0;  // bins that entered the comparison
};

struct CollapseReport {
    double alpha = 0.0;
    std::size_t reference_lag = 0;
    std::vector<LagDistance> per_lag_distance;
    bool collapsed = false;
    double max_distance() const;
};

/// Rescales every PDF onto the reference lag with lambda = tau / tau_ref and
/// measures the mean squared difference of log densities against the
/// reference in the central region. Comparison is done in physical units.
CollapseReport collapse(std::span<const EmpiricalPdf> pdfs, double alpha, std::size_t reference_lag,
                        const CollapseOptions& options = {});

}  // namespace mfscale
