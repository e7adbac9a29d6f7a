#include "mfscale/levy.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "mfscale/error.hpp"

namespace mfscale {

namespace {

// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1].
constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851, 0.864864423359769072789712788640926,
    0.741531185599394439863864773280788, 0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204, 0.104790010322250183839876322541518,
    0.140653259715525918745189590510238, 0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5, 7).
constexpr std::array<double, 4> kGaussWeights = {0.129484966168869693270611432679082,
                                                 0.279705391489276667901467771423780,
                                                 0.381830050505118944950369775488975,
                                                 0.417959183673469387755102040816327};

constexpr double kTailTarget = 1e-13;     // bound on the neglected tail of the integral
constexpr double kQuadTarget = 1e-11;     // error budget spread across [0, Q]
constexpr int kMaxDepth = 48;
constexpr double kMaxPanels = 4e6;

template <class F>
struct AdaptiveGk {
    const F& f;
    double density;  // tolerance per unit length
    double worst_excess = 0.0;

    double integrate(double a, double b, int depth) {
        const double mid = 0.5 * (a + b);
        const double half = 0.5 * (b - a);
        const double fc = f(mid);
        double kronrod = kKronrodWeights[7] * fc;
        double gauss = kGaussWeights[3] * fc;
        for (std::size_t i = 0; i < 7; ++i) {
            const double dx = half * kKronrodNodes[i];
            const double sum = f(mid - dx) + f(mid + dx);
            kronrod += kKronrodWeights[i] * sum;
            if (i % 2 == 1) gauss += kGaussWeights[i / 2] * sum;
        }
        kronrod *= half;
        gauss *= half;
        const double err = std::abs(kronrod - gauss);
        const double tol = density * (b - a);
        if (err <= tol || (b - a) <= 1e-300) return kronrod;
        if (depth >= kMaxDepth) {
            worst_excess = std::max(worst_excess, err);
            return kronrod;
        }
        return integrate(a, mid, depth + 1) + integrate(mid, b, depth + 1);
    }
};

// Smallest Q with (1/pi) * integral_Q^inf exp(-c q^mu) dq below kTailTarget.
double envelope_cutoff(double mu, double c) {
    const double a = 1.0 / mu;
    // integral_Q^inf exp(-c q^mu) dq = (1/mu) c^(-1/mu) Gamma(a, c Q^mu)
    const double prefactor = a * std::pow(c, -a) * std::tgamma(a) / std::numbers::pi;
    const double p = kTailTarget / prefactor;
    double u = 36.0;
    if (p < 1.0) u = std::max(u, boost::math::gamma_q_inv(a, p));
    return std::pow(u / c, a);
}

}  // namespace

void LevyModel::validate() const {
    if (!(mu > 0.0 && mu <= 2.0)) throw DomainError("stability index mu must lie in (0, 2], got " + std::to_string(mu));
    if (!(gamma > 0.0)) throw DomainError("gamma must be positive, got " + std::to_string(gamma));
    if (!(delta_s > 0.0)) throw DomainError("delta_s must be positive, got " + std::to_string(delta_s));
}

double levy_density(const LevyModel& model, double x) {
    model.validate();
    const double mu = model.mu;
    const double c = model.scale();
    const double ax = std::abs(x);
    const double cutoff = envelope_cutoff(mu, c);

    auto integrand = [&](double q) { return std::exp(-c * std::pow(q, mu)) * std::cos(q * ax); };
    AdaptiveGk<decltype(integrand)> gk{integrand, kQuadTarget / cutoff};

    double total = 0.0;
    if (ax == 0.0) {
        total = gk.integrate(0.0, cutoff, 0);
    } else {
        // Panels aligned to the half-periods of the cosine.
        const double half_period = std::numbers::pi / ax;
        const double panels = std::ceil(cutoff / half_period);
        if (panels > kMaxPanels) {
            throw NumericalError("Levy quadrature at x = " + std::to_string(x) + " needs " + std::to_string(panels) +
                                 " panels");
        }
        const auto count = static_cast<std::size_t>(panels);
        for (std::size_t k = 0; k < count; ++k) {
            const double a = static_cast<double>(k) * half_period;
            const double b = std::min(cutoff, static_cast<double>(k + 1) * half_period);
            total += gk.integrate(a, b, 0);
        }
    }
    if (gk.worst_excess > 1e-9) {
        throw NumericalError("Levy quadrature did not converge at x = " + std::to_string(x) +
                             "; achieved panel error " + std::to_string(gk.worst_excess));
    }
    double density = total / std::numbers::pi;
    if (density < 0.0) {
        if (density < -1e-10) {
            throw NumericalError("Levy quadrature produced negative density " + std::to_string(density) +
                                 " at x = " + std::to_string(x));
        }
        density = 0.0;
    }
    return density;
}

double levy_peak(const LevyModel& model) {
    model.validate();
    return std::tgamma(1.0 / model.mu) / (std::numbers::pi * model.mu * std::pow(model.scale(), 1.0 / model.mu));
}

std::vector<double> levy_overlay(const LevyModel& model, std::span<const double> grid) {
    std::vector<double> out;
    out.reserve(grid.size());
    for (double x : grid) out.push_back(levy_density(model, x));
    return out;
}

double peak_density(const EmpiricalPdf& pdf) {
    const auto idx = pdf.bin_containing_zero();
    if (!idx) {
        throw DomainError("zero lies outside the histogram at lag " + std::to_string(pdf.lag));
    }
    return pdf.physical_density(*idx);
}

LevyFit fit_mu_from_peaks(std::span<const EmpiricalPdf> pdfs, const LevyFitOptions& options) {
    if (pdfs.size() < 3) {
        throw FitRangeError("peak fit needs at least 3 lags, got " + std::to_string(pdfs.size()));
    }
    LevyFit fit;
    std::vector<double> tau, peak;
    for (const auto& pdf : pdfs) {
        const double p0 = peak_density(pdf);
        if (!(p0 > 0.0)) {
            throw NonDecayingPeakError("empty central bin at lag " + std::to_string(pdf.lag));
        }
        fit.peak_table.emplace_back(pdf.lag, p0);
        tau.push_back(static_cast<double>(pdf.lag));
        peak.push_back(p0);
    }
    const auto [tmin, tmax] = std::minmax_element(tau.begin(), tau.end());
    fit.fit_range = {*tmin, *tmax};
    const auto ll = loglog_fit(tau, peak, fit.fit_range);
    fit.slope = ll.slope;
    fit.slope_stderr = ll.std_error;
    if (!(ll.slope < 0.0)) {
        throw NonDecayingPeakError("peak density does not decay with lag (slope " + std::to_string(ll.slope) + ")");
    }
    fit.raw_mu = -1.0 / ll.slope;
    if (fit.raw_mu > 2.0 + options.boundary_tolerance) {
        throw StabilityError("fitted stability index " + std::to_string(fit.raw_mu) + " exceeds 2", fit.raw_mu,
                             ll.slope);
    }
    fit.clamped = fit.raw_mu > 2.0;
    fit.mu_hat = std::min(fit.raw_mu, 2.0);
    fit.mu_stderr = ll.std_error / (ll.slope * ll.slope);

    const std::size_t ref = static_cast<std::size_t>(std::distance(tau.begin(), tmin));
    const double mu = fit.mu_hat;
    const double scale = std::pow(std::tgamma(1.0 / mu) / (std::numbers::pi * mu * peak[ref]), mu);
    fit.gamma_hat = scale / *tmin;
    return fit;
}

}  // namespace mfscale
