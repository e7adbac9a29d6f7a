#include "mfscale/synth.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "fft.hpp"
#include "mfscale/error.hpp"
#include "mfscale/rng.hpp"

namespace mfscale {

std::string_view to_string(GenKind kind) {
    switch (kind) {
        case GenKind::gaussian_noise: return "gaussian_noise";
        case GenKind::fgn: return "fgn";
        case GenKind::stable_flight: return "stable_flight";
        case GenKind::binomial_cascade: return "binomial_cascade";
    }
    return "unknown";
}

std::optional<GenKind> parse_gen_kind(std::string_view name) {
    for (auto k : {GenKind::gaussian_noise, GenKind::fgn, GenKind::stable_flight, GenKind::binomial_cascade}) {
        if (to_string(k) == name) return k;
    }
    return std::nullopt;
}

void GenSpec::validate() const {
    switch (kind) {
        case GenKind::gaussian_noise:
            if (length < 2) throw DomainError("gaussian_noise length must be >= 2");
            break;
        case GenKind::fgn:
            if (!(hurst > 0.0 && hurst < 1.0)) throw DomainError("fgn needs 0 < H < 1, got " + std::to_string(hurst));
            if (length < 64) throw DomainError("fgn length must be >= 64, got " + std::to_string(length));
            break;
        case GenKind::stable_flight:
            if (!(mu > 0.0 && mu <= 2.0)) throw DomainError("stable_flight needs 0 < mu <= 2, got " + std::to_string(mu));
            if (!(gamma > 0.0)) throw DomainError("stable_flight needs gamma > 0");
            if (length < 2) throw DomainError("stable_flight length must be >= 2");
            break;
        case GenKind::binomial_cascade:
            if (!(cascade_a > 0.5 && cascade_a < 1.0)) {
                throw DomainError("binomial_cascade needs 0.5 < a < 1, got " + std::to_string(cascade_a));
            }
            if (levels < 10 || levels > 30) {
                throw DomainError("binomial_cascade levels must lie in [10, 30], got " + std::to_string(levels));
            }
            break;
    }
}

Series gen_gaussian_noise(const GenSpec& spec) {
    spec.validate();
    Rng rng(spec.seed);
    std::vector<double> v(spec.length);
    for (double& x : v) x = rng.normal();
    return Series(std::move(v), "gaussian_noise");
}

Series gen_fgn(const GenSpec& spec) {
    spec.validate();
    const std::size_t n = spec.length;
    const double two_h = 2.0 * spec.hurst;
    auto autocov = [two_h](double k) {
        return 0.5 * (std::pow(std::abs(k + 1.0), two_h) - 2.0 * std::pow(std::abs(k), two_h) +
                      std::pow(std::abs(k - 1.0), two_h));
    };

    // First row of the 2n circulant: g(0..n), g(n-1..1).
    const std::size_t m = 2 * n;
    std::vector<std::complex<double>> row(m);
    for (std::size_t k = 0; k <= n; ++k) row[k] = autocov(static_cast<double>(k));
    for (std::size_t k = 1; k < n; ++k) row[m - k] = row[k];
    const auto eig = fft::forward(row);

    double max_eig = 0.0;
    for (const auto& e : eig) max_eig = std::max(max_eig, e.real());
    std::vector<double> lambda(m);
    for (std::size_t k = 0; k < m; ++k) {
        const double l = eig[k].real();
        if (l < -1e-10 * max_eig) {
            throw NumericalError("fgn circulant embedding is not positive definite for n = " + std::to_string(n) +
                                 "; use a larger n");
        }
        lambda[k] = std::max(l, 0.0);
    }

    Rng rng(spec.seed);
    std::vector<std::complex<double>> z(m);
    const double md = static_cast<double>(m);
    for (std::size_t k = 0; k < m; ++k) {
        const double re = rng.normal();
        const double im = rng.normal();
        z[k] = std::sqrt(lambda[k] / md) * std::complex<double>(re, im);
    }
    const auto w = fft::forward(z);
    std::vector<double> v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = w[j].real();
    return Series(std::move(v), "fgn");
}

Series gen_stable_flight(const GenSpec& spec) {
    spec.validate();
    const double mu = spec.mu;
    const double scale = std::pow(spec.gamma, 1.0 / mu);
    Rng rng(spec.seed);
    std::vector<double> path(spec.length);
    double level = 0.0;
    for (double& p : path) {
        const double v = std::numbers::pi * (rng.uniform() - 0.5);
        const double w = rng.exponential();
        double x;
        if (mu == 1.0) {
            x = std::tan(v);
        } else {
            x = std::sin(mu * v) / std::pow(std::cos(v), 1.0 / mu) *
                std::pow(std::cos((1.0 - mu) * v) / w, (1.0 - mu) / mu);
        }
        level += scale * x;
        p = level;
    }
    return Series(std::move(path), "stable_flight");
}

Series gen_binomial_cascade(const GenSpec& spec) {
    spec.validate();
    const double a = spec.cascade_a;
    const double b = 1.0 - a;
    Rng rng(spec.seed);
    std::vector<double> mass{1.0};
    for (unsigned level = 0; level < spec.levels; ++level) {
        std::vector<double> next(2 * mass.size());
        for (std::size_t i = 0; i < mass.size(); ++i) {
            const bool swap = spec.shuffle && (rng.next_u64() >> 63) != 0;
            next[2 * i] = mass[i] * (swap ? b : a);
            next[2 * i + 1] = mass[i] * (swap ? a : b);
        }
        mass = std::move(next);
    }
    return Series(std::move(mass), "binomial_cascade");
}

Series generate(const GenSpec& spec) {
    switch (spec.kind) {
        case GenKind::gaussian_noise: return gen_gaussian_noise(spec);
        case GenKind::fgn: return gen_fgn(spec);
        case GenKind::stable_flight: return gen_stable_flight(spec);
        case GenKind::binomial_cascade: return gen_binomial_cascade(spec);
    }
    throw DomainError("unknown generator kind");
}

}  // namespace mfscale
