#include <doctest.h>

#include <cmath>
#include <random>

#include "mfscale/error.hpp"
#include "mfscale/fit.hpp"
#include "mfscale/structure.hpp"
#include "mfscale/synth.hpp"
#include "testutil.hpp"

using namespace mfscale;

namespace {

StructureSet power_law_set(double alpha) {
    StructureSet set;
    set.lags = {1, 2, 4, 8, 16, 32, 64, 128};
    set.orders = default_structure_orders();
    for (auto lag : set.lags) {
        for (double n : set.orders) set.s_values.push_back(std::pow(static_cast<double>(lag), alpha * n));
    }
    return set;
}

ZetaExponents zeta_of(std::vector<double> orders, std::vector<double> zeta) {
    ZetaExponents z;
    z.orders = std::move(orders);
    z.zeta = std::move(zeta);
    double num = 0, den = 0;
    for (std::size_t i = 0; i < z.orders.size(); ++i) {
        num += z.orders[i] * z.zeta[i];
        den += z.orders[i] * z.orders[i];
    }
    z.linear_alpha = num / den;
    for (std::size_t i = 0; i < z.orders.size(); ++i) {
        z.nonlinearity = std::max(z.nonlinearity, std::abs(z.zeta[i] - z.linear_alpha * z.orders[i]));
    }
    return z;
}

const std::vector<std::size_t> kLags{1, 2, 3, 5, 8, 12, 18, 27, 40, 60, 90, 100};

}  // namespace

TEST_SUITE("structure") {

TEST_CASE("structure function arithmetic") {
    CHECK(structure_function(std::vector<double>{-1.0, 2.0}, 3.0) == doctest::Approx(4.5));
    const std::vector<double> c(10, -1.5);
    for (double n : {0.5, 1.0, 2.0, 3.5}) CHECK(structure_function(c, n) == doctest::Approx(std::pow(1.5, n)));
    auto r = testutil::normal_noise(3, 1000);
    const double m = testutil::mean(r);
    for (auto& v : r) v -= m;
    CHECK(structure_function(r, 2.0) == doctest::Approx(testutil::variance(r)).epsilon(1e-12));
    CHECK_THROWS_AS(structure_function(std::vector<double>{}, 2.0), InsufficientDataError);
    CHECK_THROWS_AS(structure_function(c, 0.0), DomainError);
    CHECK_THROWS_AS(structure_function(c, -1.0), DomainError);
}

TEST_CASE("Lyapunov inequality across orders") {
    std::mt19937_64 gen(5);
    std::student_t_distribution<double> t(2.5);
    std::vector<double> v(5000);
    for (auto& x : v) x = t(gen);
    const Series s(testutil::cumsum(v));
    std::vector<double> orders;
    for (double n = 0.25; n <= 6.0; n += 0.25) orders.push_back(n);
    const auto set = structure_functions(s, kLags, orders);
    for (std::size_t li = 0; li < set.lags.size(); ++li) {
        for (std::size_t ni = 1; ni < orders.size(); ++ni) {
            const double lo = std::pow(set.s(li, ni - 1), 1.0 / orders[ni - 1]);
            const double hi = std::pow(set.s(li, ni), 1.0 / orders[ni]);
            CHECK(lo <= hi * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("scaling covariance") {
    const auto w = testutil::random_walk(6, 3000);
    auto scaled = w;
    const double c = 2.5;
    for (auto& x : scaled) x *= c;
    const auto orders = default_structure_orders();
    const auto a = structure_functions(Series(w), kLags, orders);
    const auto b = structure_functions(Series(scaled), kLags, orders);
    for (std::size_t li = 0; li < kLags.size(); ++li) {
        for (std::size_t ni = 0; ni < orders.size(); ++ni) {
            CHECK(b.s(li, ni) == doctest::Approx(std::pow(c, orders[ni]) * a.s(li, ni)).epsilon(1e-12));
        }
    }
    const auto za = fit_zeta(a);
    const auto zb = fit_zeta(b);
    for (std::size_t ni = 0; ni < orders.size(); ++ni) CHECK(std::abs(za.zeta[ni] - zb.zeta[ni]) < 1e-10);
}

TEST_CASE("exact power-law structure functions") {
    const auto z = fit_zeta(power_law_set(0.3), {1, 100});
    for (std::size_t i = 0; i < z.orders.size(); ++i) {
        CHECK(z.zeta[i] == doctest::Approx(0.3 * z.orders[i]).epsilon(1e-12));
        CHECK(z.std_error[i] < 1e-12);
    }
    CHECK(z.linear_alpha == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(z.nonlinearity < 1e-12);
    CHECK(multifractality_test(z, 0.05).verdict == FractalVerdict::monofractal);
    CHECK_THROWS_AS(fit_zeta(power_law_set(0.3), {3, 5}), FitRangeError);
}

TEST_CASE("Brownian increments obey the monoscaling law") {
    const Series s(testutil::random_walk(77, 1 << 16));
    const auto z = fit_zeta(structure_functions(s, kLags, default_structure_orders()), {1, 100});
    for (std::size_t i = 0; i < z.orders.size(); ++i) {
        CHECK(std::abs(z.zeta[i] - 0.5 * z.orders[i]) <= 0.05 * z.orders[i]);
    }
    CHECK(multifractality_test(z, 0.05).verdict == FractalVerdict::monofractal);
}

TEST_CASE("sigma exponent is half of zeta_2") {
    std::mt19937_64 gen(9);
    std::student_t_distribution<double> t(3.0);
    std::vector<double> v(4000);
    for (auto& x : v) x = t(gen);
    const Series s(testutil::cumsum(v));
    const std::vector<double> two{2.0};
    const auto z = fit_zeta(structure_functions(s, kLags, two), {1, 100});
    const auto sg = sigma_tau(s, kLags, {1, 100});
    CHECK(sg.alpha == doctest::Approx(0.5 * z.zeta[0]).epsilon(1e-12));
    for (std::size_t i = 0; i < kLags.size(); ++i) {
        CHECK(sg.sigma[i] == doctest::Approx(std::sqrt(structure_function(compute_returns(s, kLags[i]), 2.0))));
    }
}

TEST_CASE("Brownian sigma exponent") {
    double mean_alpha = 0.0;
    const int seeds = 10;
    for (int seed = 0; seed < seeds; ++seed) {
        const Series s(testutil::random_walk(300 + seed, 1 << 16));
        mean_alpha += sigma_tau(s, kLags, {1, 100}).alpha / seeds;
    }
    CHECK(std::abs(mean_alpha - 0.5) <= 0.03);
}

TEST_CASE("multifractality verdicts") {
    const std::vector<double> n{0.5, 1, 1.5, 2, 2.5, 3};
    std::vector<double> linear;
    for (double x : n) linear.push_back(0.5 * x);
    const auto mono = multifractality_test(zeta_of(n, linear), 1e-9);
    CHECK(mono.verdict == FractalVerdict::monofractal);
    CHECK(mono.strictly_increasing);

    const auto flat = multifractality_test(zeta_of(n, {0.5, 1, 1, 1, 1, 1}), 10.0);
    CHECK(flat.verdict == FractalVerdict::multifractal);
    CHECK_FALSE(flat.strictly_increasing);

    CHECK_THROWS_AS(multifractality_test(zeta_of({1, 2}, {0.5, 1}), 0.05), DomainError);
    CHECK(to_string(FractalVerdict::multifractal) == "multifractal");
}

TEST_CASE("binomial cascade exponents are multifractal") {
    GenSpec spec;
    spec.kind = GenKind::binomial_cascade;
    spec.cascade_a = 0.7;
    spec.levels = 16;
    const auto measure = gen_binomial_cascade(spec);
    const std::vector<double> m(measure.values().begin(), measure.values().end());
    const Series cumulative(testutil::cumsum(m));
    const auto z = fit_zeta(structure_functions(cumulative, kLags, default_structure_orders()), {1, 100});
    const auto verdict = multifractality_test(z, 0.05);
    CHECK(verdict.verdict == FractalVerdict::multifractal);
    CHECK(verdict.nonlinearity > 0.05);
}

TEST_CASE("log-log fit") {
    std::vector<double> x, y;
    for (int i = 1; i <= 10; ++i) {
        x.push_back(1.7 * i);
        y.push_back(3.0 * std::pow(1.7 * i, 0.7));
    }
    const auto f = loglog_fit(x, y);
    CHECK(f.slope == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(f.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-12));
    CHECK(f.points == 10);

    const std::vector<double> flat(10, 4.0);
    CHECK(std::abs(loglog_fit(x, flat).slope) < 1e-12);

    std::mt19937_64 gen(10);
    std::normal_distribution<double> noise(0.0, 0.01);
    std::vector<double> noisy;
    for (double xi : x) noisy.push_back(xi * xi * (1.0 + noise(gen)));
    CHECK(loglog_fit(x, noisy).slope == doctest::Approx(2.0).epsilon(0.025));

    auto bad = y;
    bad[3] = 0.0;
    CHECK_THROWS_AS(loglog_fit(x, bad), DomainError);
    CHECK_THROWS_AS(loglog_fit(x, y, {1.0, 3.0}), FitRangeError);
    const auto ranged = loglog_fit(x, y, {3.0, 12.0});
    CHECK(ranged.points == 6);
}

}  // TEST_SUITE
