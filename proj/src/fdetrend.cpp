#include "mfscale/fdetrend.hpp"

#include <complex>
#include <string>

#include "fft.hpp"
#include "mfscale/error.hpp"

namespace mfscale {

std::vector<double> fourier_detrend(std::span<const double> values, const DetrendConfig& config) {
    const std::size_t n = values.size();
    if (n < 4) {
        throw InsufficientDataError("Fourier detrending needs at least 4 samples, got " + std::to_string(n));
    }
    if (config.n_modes_removed > n / 2) {
        throw DomainError("n_modes_removed " + std::to_string(config.n_modes_removed) + " exceeds floor(N/2) = " +
                          std::to_string(n / 2));
    }
    std::vector<double> out(values.begin(), values.end());
    if (config.n_modes_removed == 0 && !config.remove_mean) return out;

    auto spectrum = fft::forward_real(values);
    // Keep only the modes being removed; everything else is zeroed.
    std::vector<std::complex<double>> trend_modes(spectrum.size());
    if (config.remove_mean) trend_modes[0] = spectrum[0];
    for (std::size_t k = 1; k <= config.n_modes_removed; ++k) trend_modes[k] = spectrum[k];

    const auto trend = fft::inverse_real(trend_modes, n);
    for (std::size_t i = 0; i < n; ++i) out[i] -= trend[i];
    return out;
}

Series fourier_detrend(const Series& series, const DetrendConfig& config) {
    auto ts = series.timestamps();
    return Series({ts.begin(), ts.end()}, fourier_detrend(series.values(), config), series.label());
}

}  // namespace mfscale
