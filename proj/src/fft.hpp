#pragma once

// Thin FFTW wrappers. Arbitrary lengths, no padding.

#include <complex>
#include <span>
#include <vector>

namespace mfscale::fft {

/// Real-to-half-complex forward transform; returns n/2 + 1 bins.
std::vector<std::complex<double>> forward_real(std::span<const double> x);

/// Inverse of forward_real, normalized by 1/n.
std::vector<double> inverse_real(std::span<const std::complex<double>> spectrum, std::size_t n);

/// Unnormalized forward complex DFT, sum_j x_j exp(-2 pi i jk / n).
std::vector<std::complex<double>> forward(std::span<const std::complex<double>> x);

}  // namespace mfscale::fft
