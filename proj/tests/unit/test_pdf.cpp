#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mfscale/error.hpp"
#include "mfscale/pdf.hpp"
#include "mfscale/synth.hpp"
#include "testutil.hpp"

using namespace mfscale;

namespace {

ReturnSet as_returns(std::vector<double> v, std::size_t lag = 1) {
    ReturnSet r;
    r.lag = lag;
    r.origin_length = v.size() + lag;
    r.values = std::move(v);
    return r;
}

double area(const EmpiricalPdf& p) {
    double a = 0.0;
    for (double d : p.density) a += d * p.bin_width;
    return a;
}

EmpiricalPdf synthetic_pdf(std::size_t lag, double sigma, double (*shape)(double)) {
    EmpiricalPdf p;
    p.lag = lag;
    p.bin_width = 0.1;
    p.normalization = sigma;
    p.sample_count = 100000;
    for (int i = -30; i <= 30; ++i) {
        const double x = 0.1 * i;
        p.bin_centers.push_back(x);
        p.density.push_back(shape(x));
        p.bin_counts.push_back(1000);
    }
    return p;
}

std::vector<EmpiricalPdf> stable_pdfs(std::uint64_t seed, std::size_t n, double mu) {
    GenSpec spec;
    spec.kind = GenKind::stable_flight;
    spec.mu = mu;
    spec.length = n;
    spec.seed = seed;
    const auto s = gen_stable_flight(spec);
    std::vector<EmpiricalPdf> out;
    for (std::size_t lag : {1, 2, 4, 8}) {
        const auto r = compute_returns(s, lag);
        out.push_back(estimate_pdf(r, default_bin_count(r.values.size()), 3.0));
    }
    return out;
}

}  // namespace

TEST_SUITE("pdf") {

TEST_CASE("bin count rule") {
    CHECK(default_bin_count(50) == 25);
    CHECK(default_bin_count(8000) == 40);
    CHECK(default_bin_count(10'000'000) == 201);
}

TEST_CASE("histogram normalization and grid") {
    for (std::uint64_t seed : {1, 2, 3}) {
        const auto p = estimate_pdf(as_returns(testutil::random_walk(seed, 3000)), 37);
        CHECK(area(p) == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(p.coverage == 1.0);
        CHECK(p.density.size() == 37);
        for (std::size_t i = 1; i < p.bin_centers.size(); ++i) {
            CHECK(p.bin_centers[i] - p.bin_centers[i - 1] == doctest::Approx(p.bin_width).epsilon(1e-9));
        }
        std::size_t total = 0;
        for (auto c : p.bin_counts) total += c;
        CHECK(total == 3000);
    }
}

TEST_CASE("normalization divides by the standard deviation") {
    auto v = testutil::normal_noise(4, 20000, 7.0);
    const auto p = estimate_pdf(as_returns(v), 60);
    CHECK(p.normalization == doctest::Approx(std::sqrt(testutil::variance(v))).epsilon(1e-12));
    CHECK(p.bin_centers.front() > -6.0);
    CHECK(p.bin_centers.back() < 6.0);
}

TEST_CASE("windowed histogram integrates to its coverage") {
    const auto v = testutil::normal_noise(5, 50000);
    const auto p = estimate_pdf(as_returns(v), 101, 2.0);
    CHECK(area(p) == doctest::Approx(p.coverage).epsilon(1e-9));
    CHECK(p.coverage == doctest::Approx(std::erf(2.0 / std::sqrt(2.0))).epsilon(0.01));
    CHECK(p.bin_centers.front() == doctest::Approx(-2.0 + p.bin_width / 2));
    CHECK_THROWS_AS(estimate_pdf(as_returns(v), 101, 0.0), DomainError);
}

TEST_CASE("standard Gaussian peak density") {
    const auto p = estimate_pdf(as_returns(testutil::normal_noise(6, 1'000'000)), 201);
    const auto zero = p.bin_containing_zero();
    REQUIRE(zero.has_value());
    CHECK(std::abs(p.density[*zero] - 1.0 / std::sqrt(2.0 * std::numbers::pi)) <= 0.01);
}

TEST_CASE("estimation errors") {
    CHECK_THROWS_AS(estimate_pdf(as_returns(std::vector<double>(100, 1.0)), 20), DegenerateError);
    CHECK_THROWS_AS(estimate_pdf(as_returns(testutil::normal_noise(1, 49)), 20), InsufficientDataError);
    CHECK_THROWS_AS(estimate_pdf(as_returns(testutil::normal_noise(1, 100)), 7), InsufficientDataError);
}

TEST_CASE("rescaling: identity, area and group property") {
    const auto p = estimate_pdf(as_returns(testutil::normal_noise(8, 5000)), 50);
    const auto same = rescale_pdf(p, 0.6, 1.0);
    CHECK(same.bin_centers == p.bin_centers);
    CHECK(same.density == p.density);
    CHECK(same.bin_width == p.bin_width);

    const double alpha = 0.62;
    const auto r = rescale_pdf(p, alpha, 3.0);
    CHECK(area(r) == doctest::Approx(area(p)).epsilon(1e-12));
    const auto twice = rescale_pdf(rescale_pdf(p, alpha, 3.0), alpha, 0.4);
    const auto once = rescale_pdf(p, alpha, 1.2);
    for (std::size_t i = 0; i < p.density.size(); ++i) {
        CHECK(twice.bin_centers[i] == doctest::Approx(once.bin_centers[i]).epsilon(1e-13));
        CHECK(twice.density[i] == doctest::Approx(once.density[i]).epsilon(1e-13));
    }
    CHECK(twice.bin_width == doctest::Approx(once.bin_width).epsilon(1e-13));
    CHECK_THROWS_AS(rescale_pdf(p, alpha, 0.0), DomainError);
    CHECK_THROWS_AS(rescale_pdf(p, alpha, -2.0), DomainError);
}

TEST_CASE("collapse of identical PDFs with alpha 0") {
    std::vector<EmpiricalPdf> pdfs;
    for (std::size_t lag : {1, 2, 4}) {
        pdfs.push_back(synthetic_pdf(lag, 1.0, [](double x) { return std::exp(-x * x / 2) / std::sqrt(2 * std::numbers::pi); }));
    }
    const auto rep = collapse(pdfs, 0.0, 1);
    REQUIRE(rep.per_lag_distance.size() == 3);
    for (const auto& d : rep.per_lag_distance) CHECK(d.distance == 0.0);
    CHECK(rep.collapsed);
    CHECK(rep.reference_lag == 1);
}

TEST_CASE("collapse distance is symmetric on a shared grid") {
    const auto a = synthetic_pdf(1, 1.0, [](double x) { return std::exp(-x * x / 2); });
    const auto b = synthetic_pdf(3, 1.0, [](double x) { return std::exp(-std::abs(x)); });
    const std::vector<EmpiricalPdf> pdfs{a, b};
    const auto ab = collapse(pdfs, 0.0, 1);
    const auto ba = collapse(pdfs, 0.0, 3);
    CHECK(ab.per_lag_distance[1].distance > 0.0);
    CHECK(ab.per_lag_distance[1].distance == doctest::Approx(ba.per_lag_distance[0].distance).epsilon(1e-12));
    CHECK(ba.per_lag_distance[1].distance == 0.0);
}

TEST_CASE("collapse errors") {
    const auto a = synthetic_pdf(1, 1.0, [](double x) { return std::exp(-x * x); });
    const std::vector<EmpiricalPdf> one{a};
    CHECK_THROWS_AS(collapse(one, 0.5, 1), DomainError);
    auto far = a;
    far.lag = 2;
    for (auto& c : far.bin_centers) c += 100.0;
    const std::vector<EmpiricalPdf> two{a, far};
    CHECK_THROWS_AS(collapse(two, 0.0, 5), DomainError);
    CHECK_THROWS_AS(collapse(two, 0.0, 1), NoOverlapError);
}

TEST_CASE("Brownian increments at tau and 4 tau collapse with alpha 1/2") {
    const Series s(testutil::random_walk(12, 400000));
    std::vector<EmpiricalPdf> pdfs;
    for (std::size_t lag : {5, 20}) {
        const auto r = compute_returns(s, lag);
        pdfs.push_back(estimate_pdf(r, 101, 3.0));
    }
    const auto rep = collapse(pdfs, 0.5, 5);
    CHECK(rep.per_lag_distance[1].distance < 0.01);
    CHECK(rep.collapsed);
}

TEST_CASE("stable increments collapse with alpha = 1/mu") {
    const auto pdfs = stable_pdfs(42, 1'000'000, 1.5);
    const auto rep = collapse(pdfs, 1.0 / 1.5, 1, {0.05, 3.0, 50});
    CHECK(rep.collapsed);
    CHECK(rep.max_distance() <= 0.05);
}

TEST_CASE("the true exponent beats alpha +/- 0.2") {
    const double alpha = 1.0 / 1.5;
    std::vector<double> at_true, lower, upper;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto pdfs = stable_pdfs(700 + seed, 200000, 1.5);
        at_true.push_back(collapse(pdfs, alpha, 1).max_distance());
        lower.push_back(collapse(pdfs, alpha - 0.2, 1).max_distance());
        upper.push_back(collapse(pdfs, alpha + 0.2, 1).max_distance());
    }
    const double m = testutil::median(at_true);
    CHECK(m < testutil::median(lower));
    CHECK(m < testutil::median(upper));
}

}  // TEST_SUITE
