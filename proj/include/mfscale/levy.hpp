#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "mfscale/fit.hpp"
#include "mfscale/pdf.hpp"

namespace mfscale {

/// Symmetric stable law with characteristic function exp(-gamma * delta_s * |q|^mu).
struct LevyModel {
    double mu = 2.0;       // stability index, 0 < mu <= 2
    double gamma = 1.0;    // scale factor per unit lag
    double delta_s = 1.0;  // lag

    /// Throws DomainError unless 0 < mu <= 2, gamma > 0, delta_s > 0.
    void validate() const;
    double scale() const noexcept { return gamma * delta_s; }
};

/// (1/pi) * integral_0^inf exp(-gamma delta_s q^mu) cos(q x) dq, absolute error <= 1e-8.
double levy_density(const LevyModel& model, double x);

/// Closed-form peak: Gamma(1/mu) / (pi mu (gamma delta_s)^(1/mu)).
double levy_peak(const LevyModel& model);

/// Density sampled on a grid, for plot overlays.
std::vector<double> levy_overlay(const LevyModel& model, std::span<const double> grid);

struct LevyFitOptions {
    /// Raw estimates in (2, 2 + boundary_tolerance] are clamped to 2 (the
    /// Gaussian boundary); anything larger is rejected.
    double boundary_tolerance = 0.1;
};

struct LevyFit {
    double mu_hat = 0.0;
    double mu_stderr = 0.0;
    double gamma_hat = 0.0;
    double raw_mu = 0.0;      // -1 / slope before clamping
    double slope = 0.0;       // d ln P(0) / d ln tau
    double slope_stderr = 0.0;
    bool clamped = false;
    std::vector<std::pair<std::size_t, double>> peak_table;  // (tau, physical P(0))
    FitRange fit_range;
};

/// Physical-unit density of the histogram bin containing zero.
double peak_density(const EmpiricalPdf& pdf);

/// Fits P(0) ~ tau^(-1/mu) across lags. gamma_hat matches the closed-form
/// peak at the smallest lag.
LevyFit fit_mu_from_peaks(std::span<const EmpiricalPdf> pdfs, const LevyFitOptions& options = {});

}  // namespace mfscale
