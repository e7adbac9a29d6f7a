#include "mfscale/mfdfa.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

#include "mfscale/error.hpp"

namespace mfscale {

namespace {

// Orthonormal polynomial basis of degree <= m sampled on s equispaced points.
// Residuals against it equal least-squares polynomial detrending.
class PolyBasis {
public:
    PolyBasis(std::size_t s, unsigned m) : s_(s), m_(m), u_((m + 1) * s) {
        const double half = 0.5 * static_cast<double>(s - 1);
        for (unsigned k = 0; k <= m; ++k) {
            double* col = &u_[k * s];
            for (std::size_t j = 0; j < s; ++j) {
                const double t = (static_cast<double>(j) - half) / half;
                col[j] = std::pow(t, static_cast<double>(k));
            }
            // Two passes of modified Gram-Schmidt.
            for (int pass = 0; pass < 2; ++pass) {
                for (unsigned p = 0; p < k; ++p) {
                    const double* prev = &u_[p * s];
                    double dot = 0.0;
                    for (std::size_t j = 0; j < s; ++j) dot += prev[j] * col[j];
                    for (std::size_t j = 0; j < s; ++j) col[j] -= dot * prev[j];
                }
            }
            double norm = 0.0;
            for (std::size_t j = 0; j < s; ++j) norm += col[j] * col[j];
            norm = std::sqrt(norm);
            for (std::size_t j = 0; j < s; ++j) col[j] /= norm;
        }
    }

    /// Mean squared residual of `y` after removing its projection on the basis.
    double residual_variance(const double* y, std::vector<double>& work) const {
        work.assign(y, y + s_);
        for (unsigned k = 0; k <= m_; ++k) {
            const double* col = &u_[k * s_];
            double dot = 0.0;
            for (std::size_t j = 0; j < s_; ++j) dot += col[j] * work[j];
            for (std::size_t j = 0; j < s_; ++j) work[j] -= dot * col[j];
        }
        double ss = 0.0;
        for (double r : work) ss += r * r;
        return ss / static_cast<double>(s_);
    }

private:
    std::size_t s_;
    unsigned m_;
    std::vector<double> u_;
};

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double ssr = 0.0;
};

LineFit ols(std::span<const double> x, std::span<const double> y) {
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (f.intercept + f.slope * x[i]);
        f.ssr += r * r;
    }
    return f;
}

std::size_t order_index(std::span<const double> orders, double q) {
    const auto it = std::find(orders.begin(), orders.end(), q);
    if (it == orders.end()) {
        throw DomainError("order q = " + std::to_string(q) + " was not evaluated");
    }
    return static_cast<std::size_t>(it - orders.begin());
}

}  // namespace

Profile build_profile(std::span<const double> values) {
    if (values.size() < 2) {
        throw InsufficientDataError("profile needs at least 2 values, got " + std::to_string(values.size()));
    }
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
    Profile p;
    p.source_length = values.size();
    p.values.resize(values.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        acc += values[i] - mean;
        p.values[i] = acc;
    }
    return p;
}

std::vector<double> segment_variances(const Profile& profile, std::size_t scale, unsigned poly_order) {
    if (scale < poly_order + 2) {
        throw DomainError("scale " + std::to_string(scale) + " too small for polynomial order " +
                          std::to_string(poly_order) + " (need >= " + std::to_string(poly_order + 2) + ")");
    }
    const std::size_t n = profile.values.size();
    const std::size_t segments = n / scale;
    if (segments < 1) {
        throw DomainError("scale " + std::to_string(scale) + " exceeds profile length " + std::to_string(n));
    }
    const PolyBasis basis(scale, poly_order);
    std::vector<double> work;
    std::vector<double> out(2 * segments);
    const double* y = profile.values.data();
    for (std::size_t v = 0; v < segments; ++v) {
        out[v] = basis.residual_variance(y + v * scale, work);
    }
    for (std::size_t v = 0; v < segments; ++v) {
        out[segments + v] = basis.residual_variance(y + n - (v + 1) * scale, work);
    }
    return out;
}

double fluctuation_function(std::span<const double> variances, double q, bool q0_log_mode) {
    if (variances.empty()) {
        throw InsufficientDataError("fluctuation function needs at least one segment variance");
    }
    for (std::size_t i = 0; i < variances.size(); ++i) {
        if (!(variances[i] >= 0.0)) {
            throw DomainError("segment " + std::to_string(i) + " has negative variance");
        }
    }
    const double count = static_cast<double>(variances.size());
    if (q == 0.0) {
        if (!q0_log_mode) {
            throw DomainError("q = 0 requires log mode");
        }
        double acc = 0.0;
        for (std::size_t i = 0; i < variances.size(); ++i) {
            if (variances[i] == 0.0) {
                throw DegenerateError("segment " + std::to_string(i) + " has zero variance (q = 0 log mode)");
            }
            acc += 0.5 * std::log(variances[i]);
        }
        return std::exp(acc / count);
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < variances.size(); ++i) {
        if (q < 0.0 && variances[i] == 0.0) {
            throw DegenerateError("segment " + std::to_string(i) + " has zero variance with q = " + std::to_string(q));
        }
        acc += std::pow(variances[i], 0.5 * q);
    }
    return std::pow(acc / count, 1.0 / q);
}

std::vector<double> FluctuationSurface::column(std::size_t order_index) const {
    std::vector<double> out(scales.size());
    for (std::size_t i = 0; i < scales.size(); ++i) out[i] = f(i, order_index);
    return out;
}

FluctuationSurface mfdfa_surface(std::span<const double> values, std::span<const std::size_t> scales,
                                 std::span<const double> orders, const MfdfaOptions& options) {
    if (scales.empty() || orders.empty()) {
        throw DomainError("MF-DFA needs at least one scale and one order");
    }
    for (std::size_t i = 1; i < scales.size(); ++i) {
        if (scales[i] <= scales[i - 1]) throw DomainError("scales must be strictly increasing");
    }
    for (double q : orders) {
        if (!std::isfinite(q)) throw DomainError("orders must be finite");
        if (q == 0.0 && !options.q0_log_mode) throw DomainError("q = 0 requires log mode");
    }
    const auto profile = build_profile(values);
    const std::size_t n = values.size();

    FluctuationSurface surface;
    surface.scales.assign(scales.begin(), scales.end());
    surface.orders.assign(orders.begin(), orders.end());
    surface.poly_order = options.poly_order;
    surface.f_values.resize(scales.size() * orders.size());
    for (std::size_t si = 0; si < scales.size(); ++si) {
        const std::size_t s = scales[si];
        if (n / s < 4) {
            throw DomainError("scale " + std::to_string(s) + " leaves " + std::to_string(n / s) +
                              " segments, need at least 4");
        }
        const auto variances = segment_variances(profile, s, options.poly_order);
        surface.segments_per_scale.push_back(n / s);
        for (std::size_t qi = 0; qi < orders.size(); ++qi) {
            surface.f_values[si * orders.size() + qi] = fluctuation_function(variances, orders[qi], options.q0_log_mode);
        }
    }
    return surface;
}

std::vector<std::size_t> default_scales(std::size_t length, std::size_t count, std::size_t s_min, std::size_t s_max) {
    if (s_max == 0) s_max = length / 4;
    s_max = std::min(s_max, length / 4);
    if (count < 2 || s_min < 2 || s_max < s_min) {
        throw DomainError("cannot build a scale grid in [" + std::to_string(s_min) + ", " + std::to_string(s_max) +
                          "] for length " + std::to_string(length));
    }
    std::set<std::size_t> grid;
    const double lo = std::log(static_cast<double>(s_min));
    const double hi = std::log(static_cast<double>(s_max));
    for (std::size_t i = 0; i < count; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(count - 1);
        grid.insert(static_cast<std::size_t>(std::lround(std::exp(lo + t * (hi - lo)))));
    }
    return {grid.begin(), grid.end()};
}

std::vector<double> default_q_orders() { return {-4, -3, -2, -1, -0.5, 0.5, 1, 2, 3, 4}; }

double ScalingExponents::hurst() const { return alpha[order_index(orders, 2.0)]; }

double ScalingExponents::hurst_std_error() const { return std_error[order_index(orders, 2.0)]; }

ScalingExponents fit_exponents(const FluctuationSurface& surface, FitRange fit_range) {
    std::vector<double> s(surface.scales.begin(), surface.scales.end());
    ScalingExponents out;
    out.orders = surface.orders;
    out.fit_range = fit_range;
    for (std::size_t qi = 0; qi < surface.orders.size(); ++qi) {
        const auto f = surface.column(qi);
        const auto fit = loglog_fit(s, f, fit_range);
        out.alpha.push_back(fit.slope);
        out.std_error.push_back(fit.std_error);
    }
    return out;
}

std::optional<ScalingBreak> detect_scaling_break(const FluctuationSurface& surface, double q,
                                                 const BreakOptions& options) {
    const std::size_t n = surface.scales.size();
    if (n < 8) {
        throw DomainError("scaling-break detection needs at least 8 scales, got " + std::to_string(n));
    }
    const std::size_t min_pts = std::max<std::size_t>(options.min_points, 2);
    if (2 * min_pts > n) {
        throw DomainError("min_points too large for " + std::to_string(n) + " scales");
    }
    const std::size_t qi = order_index(surface.orders, q);
    std::vector<double> lx(n), ly(n);
    for (std::size_t i = 0; i < n; ++i) {
        lx[i] = std::log(static_cast<double>(surface.scales[i]));
        const double f = surface.f(i, qi);
        if (!(f > 0.0)) throw DomainError("F_q(s) must be positive for break detection");
        ly[i] = std::log(f);
    }
    const std::span<const double> x(lx), y(ly);

    std::optional<ScalingBreak> best;
    std::size_t best_k = 0;
    LineFit best_lo, best_hi;
    for (std::size_t k = min_pts; k + min_pts <= n; ++k) {
        const auto lo = ols(x.first(k), y.first(k));
        const auto hi = ols(x.subspan(k), y.subspan(k));
        const double total = lo.ssr + hi.ssr;
        if (!best || total < best->residual) {
            best = ScalingBreak{0.0, lo.slope, hi.slope, total};
            best_k = k;
            best_lo = lo;
            best_hi = hi;
        }
    }
    if (std::abs(best->slope_below - best->slope_above) <= options.slope_threshold) return std::nullopt;

    // Intersection of the two lines, kept between the neighbouring scales.
    double knee = (best_hi.intercept - best_lo.intercept) / (best_lo.slope - best_hi.slope);
    knee = std::clamp(knee, lx[best_k - 1], lx[best_k]);
    best->scale = std::exp(knee);
    return best;
}

}  // namespace mfscale
