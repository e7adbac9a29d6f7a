#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mfscale/error.hpp"
#include "mfscale/mfdfa.hpp"
#include "mfscale/rng.hpp"
#include "mfscale/synth.hpp"
#include "testutil.hpp"

using namespace mfscale;

namespace {

GenSpec spec_of(GenKind kind, std::uint64_t seed, std::size_t length = 4096) {
    GenSpec s;
    s.kind = kind;
    s.seed = seed;
    s.length = length;
    return s;
}

std::vector<double> values_of(const Series& s) { return {s.values().begin(), s.values().end()}; }

std::vector<double> increments(const Series& s) {
    const auto r = compute_returns(s, 1);
    return r.values;
}

double hurst_dfa(const std::vector<double>& x) {
    const std::vector<double> q{2.0};
    return fit_exponents(mfdfa_surface(x, default_scales(x.size()), q), {10, 100}).alpha[0];
}

// fGn has zero mean; subtracting the sample mean would bias long-memory cases.
double lag1_autocov(const std::vector<double>& x) {
    double s = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) s += x[i] * x[i - 1];
    return s / static_cast<double>(x.size() - 1);
}

}  // namespace

TEST_SUITE("synth") {

TEST_CASE("rng is seeded through splitmix64 and splits deterministically") {
    Rng a(5);
    std::mt19937_64 ref(splitmix64(5));
    for (int i = 0; i < 5; ++i) CHECK(a.next_u64() == ref());
    Rng s1 = Rng(5).split(3);
    Rng s2 = Rng(5).split(3);
    Rng s3 = Rng(5).split(4);
    const auto v1 = s1.next_u64();
    CHECK(v1 == s2.next_u64());
    CHECK(v1 != s3.next_u64());
    Rng u(9);
    for (int i = 0; i < 10000; ++i) {
        const double x = u.uniform();
        CHECK(x > 0.0);
        CHECK(x < 1.0);
    }
}

TEST_CASE("every generator is a pure function of its spec") {
    for (auto kind : {GenKind::gaussian_noise, GenKind::fgn, GenKind::stable_flight, GenKind::binomial_cascade}) {
        auto spec = spec_of(kind, 123);
        spec.shuffle = true;
        spec.mu = 1.3;
        spec.hurst = 0.7;
        spec.levels = 12;
        CHECK(generate(spec) == generate(spec));
        auto other = spec;
        other.seed = 124;
        CHECK(values_of(generate(spec)) != values_of(generate(other)));
    }
}

TEST_CASE("kind names round-trip") {
    for (auto kind : {GenKind::gaussian_noise, GenKind::fgn, GenKind::stable_flight, GenKind::binomial_cascade}) {
        CHECK(parse_gen_kind(to_string(kind)) == kind);
    }
    CHECK_FALSE(parse_gen_kind("brownian").has_value());
}

TEST_CASE("spec validation") {
    auto fgn = spec_of(GenKind::fgn, 1);
    fgn.hurst = 1.0;
    CHECK_THROWS_AS(fgn.validate(), DomainError);
    fgn.hurst = 0.0;
    CHECK_THROWS_AS(fgn.validate(), DomainError);
    fgn.hurst = 0.5;
    fgn.length = 63;
    CHECK_THROWS_AS(gen_fgn(fgn), DomainError);

    auto st = spec_of(GenKind::stable_flight, 1);
    st.mu = 2.01;
    CHECK_THROWS_AS(gen_stable_flight(st), DomainError);
    st.mu = 1.0;
    st.gamma = 0.0;
    CHECK_THROWS_AS(gen_stable_flight(st), DomainError);

    auto bc = spec_of(GenKind::binomial_cascade, 1);
    bc.cascade_a = 0.5;
    CHECK_THROWS_AS(gen_binomial_cascade(bc), DomainError);
    bc.cascade_a = 0.7;
    bc.levels = 9;
    CHECK_THROWS_AS(gen_binomial_cascade(bc), DomainError);
}

TEST_CASE("Gaussian noise moments") {
    const auto s = summary_stats(gen_gaussian_noise(spec_of(GenKind::gaussian_noise, 4, 1'000'000)).values());
    CHECK(std::abs(s.skewness) < 0.01);
    CHECK(std::abs(s.kurtosis - 3.0) < 0.03);
    CHECK(std::abs(s.mean) < 0.005);
    CHECK(s.std_dev == doctest::Approx(1.0).epsilon(0.005));
}

TEST_CASE("fGn with H = 0.5 is uncorrelated") {
    const std::size_t n = 1 << 16;
    auto spec = spec_of(GenKind::fgn, 8, n);
    spec.hurst = 0.5;
    const auto x = values_of(gen_fgn(spec));
    const double rho = lag1_autocov(x) / testutil::variance(x);
    CHECK(std::abs(rho) <= 3.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("fGn lag-1 autocovariance matches the analytic value") {
    for (double h : {0.3, 0.7, 0.85}) {
        const double expected = 0.5 * (std::pow(2.0, 2.0 * h) - 2.0);
        std::vector<double> est;
        for (std::uint64_t seed = 0; seed < 12; ++seed) {
            auto spec = spec_of(GenKind::fgn, 50 + seed, 8192);
            spec.hurst = h;
            est.push_back(lag1_autocov(values_of(gen_fgn(spec))));
        }
        const double se = std::sqrt(testutil::variance(est) / (est.size() - 1));
        CHECK(std::abs(testutil::mean(est) - expected) <= 3.0 * se);
    }
}

TEST_CASE("fGn DFA exponent follows H") {
    for (double h : {0.3, 0.7}) {
        double mean_alpha = 0.0;
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
            auto spec = spec_of(GenKind::fgn, 60 + seed, 1 << 16);
            spec.hurst = h;
            mean_alpha += hurst_dfa(values_of(gen_fgn(spec))) / 3.0;
        }
        CHECK(std::abs(mean_alpha - h) <= 0.05);
    }
}

TEST_CASE("Gaussian-boundary flight has Gaussian increments") {
    auto spec = spec_of(GenKind::stable_flight, 5, 1'000'000);
    spec.mu = 2.0;
    const auto s = summary_stats(increments(gen_stable_flight(spec)));
    CHECK(std::abs(s.kurtosis - 3.0) <= 0.05);
    CHECK(s.std_dev == doctest::Approx(std::sqrt(2.0)).epsilon(0.01));
}

TEST_CASE("Cauchy flight central density") {
    for (double gamma : {1.0, 2.5}) {
        auto spec = spec_of(GenKind::stable_flight, 6, 1'000'000);
        spec.mu = 1.0;
        spec.gamma = gamma;
        const auto dx = increments(gen_stable_flight(spec));
        const double h = 0.05 * gamma;
        const auto inside = std::count_if(dx.begin(), dx.end(), [h](double v) { return std::abs(v) < h; });
        const double density = static_cast<double>(inside) / (2.0 * h * static_cast<double>(dx.size()));
        CHECK(density == doctest::Approx(1.0 / (std::numbers::pi * gamma)).epsilon(0.03));
    }
}

TEST_CASE("cascade conserves mass at every level") {
    auto spec = spec_of(GenKind::binomial_cascade, 0);
    spec.levels = 14;
    const auto m = values_of(gen_binomial_cascade(spec));
    REQUIRE(m.size() == (1u << 14));
    for (std::size_t block = 1; block <= m.size(); block *= 2) {
        double total = 0.0;
        for (std::size_t i = 0; i < m.size(); i += block) {
            double b = 0.0;
            for (std::size_t j = i; j < i + block; ++j) b += m[j];
            total += b;
        }
        CHECK(std::abs(total - 1.0) <= 1e-12);
    }
    double left = 0.0;
    for (std::size_t i = 0; i < m.size() / 2; ++i) left += m[i];
    CHECK(left == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(m.front() == doctest::Approx(std::pow(0.7, 14)).epsilon(1e-12));
}

TEST_CASE("shuffled cascade keeps the multiset of cell masses") {
    auto spec = spec_of(GenKind::binomial_cascade, 3);
    spec.levels = 12;
    auto plain = values_of(gen_binomial_cascade(spec));
    spec.shuffle = true;
    auto shuffled = values_of(gen_binomial_cascade(spec));
    CHECK(plain != shuffled);
    std::sort(plain.begin(), plain.end());
    std::sort(shuffled.begin(), shuffled.end());
    for (std::size_t i = 0; i < plain.size(); ++i) CHECK(shuffled[i] == doctest::Approx(plain[i]).epsilon(1e-12));
}

TEST_CASE("cascade generalized Hurst exponents match the analytic law") {
    auto spec = spec_of(GenKind::binomial_cascade, 0);
    spec.levels = 16;
    const auto m = values_of(gen_binomial_cascade(spec));
    const std::vector<double> q{-5, -4, -3, -2, -1, 1, 2, 3, 4, 5};
    const auto ex = fit_exponents(mfdfa_surface(m, default_scales(m.size()), q), {10, 100});
    for (std::size_t i = 0; i < q.size(); ++i) {
        CAPTURE(q[i]);
        CHECK(std::abs(ex.alpha[i] - testutil::cascade_h(0.7, q[i])) <= 0.1);
    }
    CHECK(testutil::cascade_h(0.7, -5) - testutil::cascade_h(0.7, 5) == doctest::Approx(0.83).epsilon(0.01));
    CHECK(ex.alpha.front() - ex.alpha.back() > 0.5);
    for (std::size_t i = 1; i < q.size(); ++i) CHECK(ex.alpha[i] <= ex.alpha[i - 1]);
}

}  // TEST_SUITE
