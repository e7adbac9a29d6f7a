#include "mfscale/structure.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mfscale/error.hpp"

namespace mfscale {

double structure_function(std::span<const double> returns, double order) {
    if (returns.empty()) {
        throw InsufficientDataError("structure function needs at least one increment");
    }
    if (!(order > 0.0)) {
        throw DomainError("structure-function order must be positive, got " + std::to_string(order));
    }
    double acc = 0.0;
    if (order == 2.0) {
        for (double r : returns) acc += r * r;
    } else {
        for (double r : returns) acc += std::pow(std::abs(r), order);
    }
    return acc / static_cast<double>(returns.size());
}

double structure_function(const ReturnSet& returns, double order) { return structure_function(returns.values, order); }

std::vector<double> StructureSet::column(std::size_t order_index) const {
    std::vector<double> out(lags.size());
    for (std::size_t i = 0; i < lags.size(); ++i) out[i] = s(i, order_index);
    return out;
}

StructureSet structure_functions(const Series& series, std::span<const std::size_t> lags,
                                 std::span<const double> orders) {
    if (lags.empty() || orders.empty()) {
        throw DomainError("structure functions need at least one lag and one order");
    }
    StructureSet out;
    out.lags.assign(lags.begin(), lags.end());
    out.orders.assign(orders.begin(), orders.end());
    out.s_values.reserve(lags.size() * orders.size());
    for (std::size_t lag : lags) {
        const auto r = compute_returns(series, lag);
        for (double n : orders) out.s_values.push_back(structure_function(r, n));
    }
    return out;
}

std::vector<double> default_structure_orders() { return {0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0}; }

ZetaExponents fit_zeta(const StructureSet& structure, FitRange fit_range) {
    std::vector<double> tau(structure.lags.begin(), structure.lags.end());
    ZetaExponents out;
    out.orders = structure.orders;
    out.fit_range = fit_range;
    for (std::size_t ni = 0; ni < structure.orders.size(); ++ni) {
        const auto fit = loglog_fit(tau, structure.column(ni), fit_range);
        out.zeta.push_back(fit.slope);
        out.std_error.push_back(fit.std_error);
    }
    double snz = 0.0, snn = 0.0;
    for (std::size_t i = 0; i < out.orders.size(); ++i) {
        snz += out.orders[i] * out.zeta[i];
        snn += out.orders[i] * out.orders[i];
    }
    out.linear_alpha = snz / snn;
    for (std::size_t i = 0; i < out.orders.size(); ++i) {
        out.nonlinearity = std::max(out.nonlinearity, std::abs(out.zeta[i] - out.linear_alpha * out.orders[i]));
    }
    return out;
}

SigmaScaling sigma_tau(std::span<const ReturnSet> returns, FitRange fit_range) {
    SigmaScaling out;
    out.fit_range = fit_range;
    std::vector<double> tau;
    for (const auto& r : returns) {
        out.lags.push_back(r.lag);
        out.sigma.push_back(std::sqrt(structure_function(r, 2.0)));
        tau.push_back(static_cast<double>(r.lag));
    }
    const auto fit = loglog_fit(tau, out.sigma, fit_range);
    out.alpha = fit.slope;
    out.std_error = fit.std_error;
    return out;
}

SigmaScaling sigma_tau(const Series& series, std::span<const std::size_t> lags, FitRange fit_range) {
    std::vector<ReturnSet> sets;
    sets.reserve(lags.size());
    for (std::size_t lag : lags) sets.push_back(compute_returns(series, lag));
    return sigma_tau(sets, fit_range);
}

std::string_view to_string(FractalVerdict v) {
    return v == FractalVerdict::monofractal ? "monofractal" : "multifractal";
}

MultifractalityResult multifractality_test(const ZetaExponents& zeta, double threshold) {
    if (zeta.orders.size() < 3) {
        throw DomainError("multifractality test needs at least 3 orders");
    }
    std::vector<std::size_t> idx(zeta.orders.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return zeta.orders[a] < zeta.orders[b]; });

    MultifractalityResult out;
    out.nonlinearity = zeta.nonlinearity;
    for (std::size_t i = 1; i < idx.size(); ++i) {
        if (!(zeta.zeta[idx[i]] > zeta.zeta[idx[i - 1]])) out.strictly_increasing = false;
    }
    out.verdict = (out.nonlinearity <= threshold && out.strictly_increasing) ? FractalVerdict::monofractal
                                                                            : FractalVerdict::multifractal;
    return out;
}

}  // namespace mfscale
