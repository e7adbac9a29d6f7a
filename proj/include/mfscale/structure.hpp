#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "mfscale/fit.hpp"
#include "mfscale/series.hpp"

namespace mfscale {

/// Mean of |dp|^n over the increments.
double structure_function(const ReturnSet& returns, double order);
double structure_function(std::span<const double> returns, double order);

struct StructureSet {
    std::vector<std::size_t> lags;
    std::vector<double> orders;
    std::vector<double> s_values;  // row-major: [lag index][order index]

    double s(std::size_t lag_index, std::size_t order_index) const {
        return s_values[lag_index * orders.size() + order_index];
    }
    std::vector<double> column(std::size_t order_index) const;
};

/// S^n(tau) for every lag/order pair, using overlapping increments.
StructureSet structure_functions(const Series& series, std::span<const std::size_t> lags,
                                 std::span<const double> orders);

/// {0.5, 1, 1.5, ..., 4}
std::vector<double> default_structure_orders();

struct ZetaExponents {
    std::vector<double> orders;
    std::vector<double> zeta;
    std::vector<double> std_error;
    FitRange fit_range;
    double linear_alpha = 0.0;  // least-squares slope of zeta_n = alpha * n
    double nonlinearity = 0.0;  // max |zeta_n - alpha * n|
};

ZetaExponents fit_zeta(const StructureSet& structure, FitRange fit_range = {1, 100});

struct SigmaScaling {
    std::vector<std::size_t> lags;
    std::vector<double> sigma;  // sqrt(S^2(tau))
    double alpha = 0.0;
    double std_error = 0.0;
    FitRange fit_range;
};

SigmaScaling sigma_tau(std::span<const ReturnSet> returns, FitRange fit_range = {1, 100});
SigmaScaling sigma_tau(const Series& series, std::span<const std::size_t> lags, FitRange fit_range = {1, 100});

enum class FractalVerdict { monofractal, multifractal };

std::string_view to_string(FractalVerdict v);

struct MultifractalityResult {
    FractalVerdict verdict = FractalVerdict::monofractal;
    double nonlinearity = 0.0;
    bool strictly_increasing = true;
};

/// Monofractal iff the deviation from a linear law stays within `threshold`
/// and zeta increases strictly with the order.
MultifractalityResult multifractality_test(const ZetaExponents& zeta, double threshold = 0.05);

}  // namespace mfscale
