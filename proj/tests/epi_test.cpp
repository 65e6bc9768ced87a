#include <doctest.h>

#include <cmath>

#include "epicast/epi.hpp"
#include "epicast/error.hpp"
#include "test_util.hpp"

using namespace epicast;

namespace {

double final_size_oracle(double r0) {
    double r = 0.5;
    for (int i = 0; i < 10000; ++i) r = 1.0 - std::exp(-r0 * r);
    return r;
}

// Daily incidence counts whose running sum over `population` equals 1 - S(t).
std::vector<double> sir_incidence(double beta, double gamma, double i0, std::size_t days,
                                  double population) {
    const auto traj = sir_simulate(beta, gamma, 1.0 - i0, i0, days);
    std::vector<double> daily(days);
    daily[0] = population * i0;
    for (std::size_t d = 1; d < days; ++d) daily[d] = population * (traj.s[d - 1] - traj.s[d]);
    return daily;
}

}  // namespace

TEST_SUITE("epi") {

TEST_CASE("growth rate of an exact exponential") {
    std::vector<double> y(40);
    for (std::size_t t = 0; t < y.size(); ++t) y[t] = 10.0 * std::exp(0.1 * static_cast<double>(t));
    const auto s = testutil::make_series(y);
    const auto fit = fit_growth_rate(s, default_growth_window(s));
    CHECK(fit.r == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(fit.stderr_r < 1e-9);
    CHECK(fit.mse < 1e-20);
    CHECK(fit.window.first == 0);
    CHECK(fit.window.length == 30);
}

TEST_CASE("constant series has zero growth") {
    const auto s = testutil::make_series(std::vector<double>(35, 20.0));
    CHECK(fit_growth_rate(s, {0, 30}).r == 0.0);
}

TEST_CASE("noisy exponential covers the true rate") {
    const auto noise = testutil::normal_draws(60, 31, 0.1);
    std::vector<double> y(60);
    for (std::size_t t = 0; t < y.size(); ++t) y[t] = 50.0 * std::exp(0.05 * static_cast<double>(t) + noise[t]);
    const auto fit = fit_growth_rate(testutil::make_series(y), {0, 60});
    CHECK(std::abs(fit.r - 0.05) <= 2 * fit.stderr_r);
}

TEST_CASE("growth window skips leading zeros and rejects non-positive days") {
    std::vector<double> y(45, 3.0);
    y[0] = y[1] = 0.0;
    y[5] = 0.0;
    const auto s = testutil::make_series(y);
    CHECK(default_growth_window(s).first == 6);
    CHECK_THROWS_AS(default_growth_window(s, 40), DomainError);
    try {
        fit_growth_rate(s, {0, 30});
        FAIL("expected an error");
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("2020-03-14") != std::string::npos);
    }
}

TEST_CASE("reproduction number from growth") {
    const auto zero = r0_from_growth(0.0, {5.0, 2.0});
    CHECK(zero.r0 == 1.0);
    CHECK(zero.ci_lower == 1.0);
    CHECK(zero.ci_upper == 1.0);

    CHECK(std::abs(r0_from_growth(0.1, {5.0, 1e6}).r0 - std::exp(0.5)) < 1e-3);
    CHECK(r0_from_growth(0.1, {5.0, 1.0}).r0 == doctest::Approx(1.5));
    CHECK(std::isfinite(r0_from_growth(0.05, {0.1, 10.0}).r0));

    double prev = 0.0;
    for (double r = -0.1; r <= 0.3; r += 0.01) {
        const double v = r0_from_growth(r, {5.0, 2.0}).r0;
        CHECK(v > prev);
        prev = v;
    }
    const auto ci = r0_from_growth(0.1, {5.0, 2.0}, 0.01);
    CHECK(ci.ci_lower < ci.r0);
    CHECK(ci.r0 < ci.ci_upper);
    CHECK_THROWS_AS(r0_from_growth(-1.0, {5.0, 2.0}), DomainError);
    CHECK_THROWS_AS(r0_from_growth(0.1, {0.0, 2.0}), DomainError);
}

TEST_CASE("SIR without transmission decays exponentially") {
    const auto traj = sir_simulate(0.0, 0.2, 0.99, 0.01, 30);
    for (std::size_t d = 0; d < 30; ++d) {
        CHECK(std::abs(traj.i[d] - 0.01 * std::exp(-0.2 * static_cast<double>(d))) < 1e-6);
    }
}

TEST_CASE("SIR conserves the population") {
    const auto traj = sir_simulate(0.5, 0.1, 0.999, 0.001, 200);
    for (std::size_t d = 0; d < 200; ++d) {
        CHECK(std::abs(traj.s[d] + traj.i[d] + traj.r[d] - 1.0) < 1e-9);
    }
}

TEST_CASE("SIR final size for R0 = 2") {
    const auto traj = sir_simulate(0.4, 0.2, 1.0 - 1e-6, 1e-6, 1500);
    const double oracle = final_size_oracle(2.0);
    CHECK(oracle == doctest::Approx(0.7968).epsilon(1e-4));
    CHECK(std::abs(traj.r.back() - oracle) < 1e-3);
}

TEST_CASE("RK4 step halving") {
    const auto coarse = sir_simulate(0.3, 0.2, 0.999, 0.001, 120, 0.1);
    const auto fine = sir_simulate(0.3, 0.2, 0.999, 0.001, 120, 0.05);
    CHECK(testutil::max_abs_diff(coarse.s, fine.s) < 1e-6);
    CHECK(testutil::max_abs_diff(coarse.i, fine.i) < 1e-6);
    CHECK_THROWS_AS(sir_simulate(0.3, 0.2, 0.99, 0.01, 10, 1.0), DomainError);
}

TEST_CASE("SIR fit recovers its own trajectory") {
    const double population = 1e6;
    const auto s = testutil::make_series(sir_incidence(0.3, 0.2, 1e-4, 160, population));
    const auto fit = sir_fit(s, population);
    CHECK(std::abs(fit.r0() - 1.5) / 1.5 < 0.05);
    CHECK(fit.trajectory_mse < 1e-8);
}

TEST_CASE("SIR fit rejects a series without incidence") {
    CHECK_THROWS_AS(sir_fit(testutil::make_series(std::vector<double>(30, 0.0)), 1e6), DomainError);
    CHECK_THROWS_AS(sir_fit(testutil::make_series(std::vector<double>(30, 1.0)), -5), DomainError);
}

TEST_CASE("SIR fit on the India fixture is plausible") {
    const auto fit = sir_fit(testutil::load("india.csv"), 1.38e9);
    CHECK(fit.r0() > 1.0);
    CHECK(fit.r0() < 5.0);
}

}  // TEST_SUITE
