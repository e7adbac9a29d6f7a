#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mfscale/series.hpp"

namespace mfscale {

/// Fourier-domain trend removal settings.
struct DetrendConfig {
    /// Number of lowest nonzero frequencies removed (both conjugate halves).
    /// Must not exceed floor(N/2).
    std::size_t n_modes_removed = 0;
    /// Also remove the zero-frequency (mean) component.
    bool remove_mean = false;

    bool operator==(const DetrendConfig&) const = default;
};

/// Subtracts the reconstruction of the removed low-frequency modes from the
/// signal. Works for any length N >= 4 via a general-length DFT.
std::vector<double> fourier_detrend(std::span<const double> values, const DetrendConfig& config);
Series fourier_detrend(const Series& series, const DetrendConfig& config);

}  // namespace mfscale
