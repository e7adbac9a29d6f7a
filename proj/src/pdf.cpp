#include "mfscale/pdf.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "mfscale/error.hpp"

namespace mfscale {

std::optional<std::size_t> EmpiricalPdf::bin_containing_zero() const {
    if (bin_centers.empty()) return std::nullopt;
    const double lo = bin_centers.front() - 0.5 * bin_width;
    const double hi = bin_centers.back() + 0.5 * bin_width;
    if (0.0 < lo || 0.0 > hi) return std::nullopt;
    const auto idx = static_cast<std::size_t>(std::floor((0.0 - lo) / bin_width));
    return std::min(idx, bin_centers.size() - 1);
}

std::size_t default_bin_count(std::size_t sample_count) {
    const double rice = std::ceil(2.0 * std::cbrt(static_cast<double>(sample_count)));
    return static_cast<std::size_t>(std::clamp(rice, 25.0, 201.0));
}

EmpiricalPdf estimate_pdf(const ReturnSet& returns, std::size_t bin_count, std::optional<double> window) {
    const auto& v = returns.values;
    const std::size_t n = v.size();
    if (n < 50) {
        throw InsufficientDataError("PDF estimation needs at least 50 samples, got " + std::to_string(n));
    }
    if (bin_count < 8) {
        throw InsufficientDataError("PDF estimation needs at least 8 bins, got " + std::to_string(bin_count));
    }
    if (window && !(*window > 0.0)) {
        throw DomainError("PDF window must be positive");
    }
    const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
    if (*mn == *mx) {
        throw DegenerateError("zero variance at lag " + std::to_string(returns.lag) + ": all increments equal");
    }

    const double nd = static_cast<double>(n);
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / nd;
    double var = 0.0;
    for (double x : v) var += (x - mean) * (x - mean);
    const double sigma = std::sqrt(var / nd);

    const double lo = window ? -*window : *mn / sigma;
    const double hi = window ? *window : *mx / sigma;
    const double width = (hi - lo) / static_cast<double>(bin_count);

    EmpiricalPdf pdf;
    pdf.lag = returns.lag;
    pdf.normalization = sigma;
    pdf.sample_count = n;
    pdf.bin_width = width;
    pdf.bin_counts.assign(bin_count, 0);
    std::size_t inside = 0;
    for (double x : v) {
        const double z = x / sigma;
        if (z < lo || z > hi) continue;
        auto idx = static_cast<std::size_t>(std::floor((z - lo) / width));
        idx = std::min(idx, bin_count - 1);
        ++pdf.bin_counts[idx];
        ++inside;
    }
    pdf.coverage = static_cast<double>(inside) / nd;
    pdf.bin_centers.resize(bin_count);
    pdf.density.resize(bin_count);
    for (std::size_t i = 0; i < bin_count; ++i) {
        pdf.bin_centers[i] = lo + (static_cast<double>(i) + 0.5) * width;
        pdf.density[i] = static_cast<double>(pdf.bin_counts[i]) / (nd * width);
    }
    return pdf;
}

EmpiricalPdf rescale_pdf(const EmpiricalPdf& pdf, double alpha, double lambda) {
    if (!(lambda > 0.0)) {
        throw DomainError("rescale lambda must be positive, got " + std::to_string(lambda));
    }
    const double shrink = std::pow(lambda, -alpha);
    const double grow = std::pow(lambda, alpha);
    EmpiricalPdf out = pdf;
    for (double& c : out.bin_centers) c *= shrink;
    for (double& d : out.density) d *= grow;
    out.bin_width *= shrink;
    return out;
}

double CollapseReport::max_distance() const {
    double m = 0.0;
    for (const auto& d : per_lag_distance) m = std::max(m, d.distance);
    return m;
}

CollapseReport collapse(std::span<const EmpiricalPdf> pdfs, double alpha, std::size_t reference_lag,
                        const CollapseOptions& options) {
    if (pdfs.size() < 2) {
        throw DomainError("collapse needs at least 2 PDFs, got " + std::to_string(pdfs.size()));
    }
    const auto ref_it =
        std::find_if(pdfs.begin(), pdfs.end(), [&](const EmpiricalPdf& p) { return p.lag == reference_lag; });
    if (ref_it == pdfs.end()) {
        throw DomainError("reference lag " + std::to_string(reference_lag) + " not among the PDFs");
    }
    const EmpiricalPdf& ref = *ref_it;
    const std::size_t nref = ref.bin_centers.size();
    std::vector<double> xr(nref), dr(nref);
    for (std::size_t j = 0; j < nref; ++j) {
        xr[j] = ref.physical_center(j);
        dr[j] = ref.physical_density(j);
    }
    const double half_width = options.central_width * ref.normalization;

    CollapseReport report;
    report.alpha = alpha;
    report.reference_lag = reference_lag;
    report.collapsed = true;
    for (const auto& pdf : pdfs) {
        LagDistance ld;
        ld.lag = pdf.lag;
        if (&pdf == &ref) {
            report.per_lag_distance.push_back(ld);
            continue;
        }
        const double lambda = static_cast<double>(pdf.lag) / static_cast<double>(reference_lag);
        const auto scaled = rescale_pdf(pdf, alpha, lambda);
        double acc = 0.0;
        for (std::size_t i = 0; i < scaled.bin_centers.size(); ++i) {
            if (scaled.bin_counts[i] < options.min_count || scaled.bin_counts[i] == 0) continue;
            const double x = scaled.physical_center(i);
            if (std::abs(x) > half_width || x < xr.front() || x > xr.back()) continue;
            auto j = static_cast<std::size_t>(std::upper_bound(xr.begin(), xr.end(), x) - xr.begin());
            j = std::min(j == 0 ? 0 : j - 1, nref - 2);
            const std::size_t c0 = ref.bin_counts[j], c1 = ref.bin_counts[j + 1];
            if (c0 < options.min_count || c1 < options.min_count || c0 == 0 || c1 == 0) continue;
            const double t = (x - xr[j]) / (xr[j + 1] - xr[j]);
            const double reference = dr[j] * (1.0 - t) + dr[j + 1] * t;
            const double diff = std::log(scaled.physical_density(i)) - std::log(reference);
            acc += diff * diff;
            ++ld.points;
        }
        if (ld.points == 0) {
            throw NoOverlapError("lag " + std::to_string(pdf.lag) + " has no populated bins overlapping the reference " +
                                 "central region");
        }
        ld.distance = acc / static_cast<double>(ld.points);
        if (ld.distance > options.threshold) report.collapsed = false;
        report.per_lag_distance.push_back(ld);
    }
    return report;
}

}  // namespace mfscale
