#include <doctest.h>

#include <cmath>

#include "epicast/arima.hpp"
#include "epicast/error.hpp"
#include "epicast/holt.hpp"
#include "epicast/hybrid.hpp"
#include "test_util.hpp"

using namespace epicast;

namespace {

// RMSE of `fitted` against `y` over observation indices [from, fitted.end()).
double rmse_from(std::span<const double> y, const FittedValues& fitted, std::size_t from) {
    double acc = 0.0;
    for (std::size_t t = from; t < fitted.end(); ++t) {
        const double r = y[t] - fitted.values[t - fitted.offset];
        acc += r * r;
    }
    return std::sqrt(acc / static_cast<double>(fitted.end() - from));
}

const char* const kFixtures[] = {"india.csv",  "maharashtra.csv",  "andhra_pradesh.csv",
                                 "tamil_nadu.csv", "karnataka.csv", "chhattisgarh.csv",
                                 "kerala.csv"};

}  // namespace

TEST_SUITE("hybrid") {

TEST_CASE("model registry") {
    for (const char* tag : {"holt", "arima", "holt-wbann", "arima-wbf", "arima(2,1,0)"}) {
        CHECK(is_known_model(tag));
    }
    for (const char* tag : {"lstm", "arima(6,0,0)", "arima(1,1)", "arima(a,b,c)", ""}) {
        CHECK_FALSE(is_known_model(tag));
    }
    CHECK_THROWS_AS(fit_model("lstm", testutil::linear(30, 1, 1), {}), DomainError);
}

TEST_CASE("linear series collapses to Holt") {
    const auto y = testutil::linear(60, 5.0, 2.0);
    const HybridModel h(y, BaseKind::holt, TdnnConfig{});
    for (double r : h.base_residuals()) CHECK(std::abs(r) < 1e-9);
    const auto base = h.base().forecast(7);
    const auto hyb = h.forecast(7);
    for (std::size_t i = 0; i < 7; ++i) CHECK(std::abs(hyb[i] - base[i]) < 1e-6);
    CHECK(h.tag() == "holt-wbann");
}

TEST_CASE("decomposition identity on every fixture") {
    for (const char* name : kFixtures) {
        CAPTURE(name);
        const auto y = testutil::load(name);
        for (BaseKind kind : {BaseKind::holt, BaseKind::arima}) {
            const HybridModel h(y.values(), kind, TdnnConfig{});
            const auto& hf = h.fitted();
            const auto& bf = h.base().fitted();
            const auto rf = h.residual_fitted();
            REQUIRE(hf.offset == rf.offset);
            REQUIRE(hf.values.size() == rf.values.size());
            for (std::size_t i = 0; i < hf.values.size(); ++i) {
                const double b = bf.values[hf.offset - bf.offset + i];
                CHECK(hf.values[i] == b + rf.values[i]);
                CHECK(std::abs((hf.values[i] - b) - rf.values[i]) <= 4e-16 * std::abs(hf.values[i]));
            }
            const auto fc = h.forecast(7);
            const auto base_fc = h.base().forecast(7);
            const auto res_fc = wbann_forecast(h.residual_model(), 7);
            for (std::size_t i = 0; i < 7; ++i) {
                CHECK(std::isfinite(fc[i]));
                CHECK(fc[i] == base_fc[i] + res_fc[i]);
            }

            // in-sample fit on the common support never gets worse
            const double base_rmse = rmse_from(y.values(), bf, hf.offset);
            const double hybrid_rmse = rmse_from(y.values(), hf, hf.offset);
            CHECK(hybrid_rmse <= base_rmse + 1e-9);
        }
    }
}

TEST_CASE("hybrid improves the in-sample fit on India") {
    const auto y = testutil::load("india.csv");
    const auto h = hybrid_fit(y, BaseKind::holt, TdnnConfig{});
    const double base_rmse = rmse_from(y.values(), h.base().fitted(), h.fitted().offset);
    const double hybrid_rmse = rmse_from(y.values(), h.fitted(), h.fitted().offset);
    CHECK(hybrid_rmse < base_rmse);
}

TEST_CASE("arima base gives the ARIMA-WBF variant") {
    const auto y = testutil::load("maharashtra.csv");
    const auto h = hybrid_fit(y, BaseKind::arima, TdnnConfig{});
    CHECK(h.tag() == "arima-wbf");
    CHECK(h.base().tag() == "arima");
    const auto& m = dynamic_cast<const ArimaForecaster&>(h.base()).model();
    CHECK(h.base().fitted().offset == static_cast<std::size_t>(m.order.d + m.order.p));
    // residuals only cover positions that have a base fitted value
    CHECK(h.base_residuals().size() == y.size() - h.base().fitted().offset);
}

TEST_CASE("prefitted base gives the same model") {
    const auto y = testutil::load("kerala.csv");
    const TdnnConfig cfg{};
    const HybridModel direct(y.values(), BaseKind::holt, cfg);
    const HybridModel reuse(std::make_shared<HoltModel>(y.values()), BaseKind::holt, cfg);
    CHECK(direct.fitted().values == reuse.fitted().values);
    CHECK(direct.forecast(5) == reuse.forecast(5));
}

TEST_CASE("deterministic under a fixed seed") {
    const auto y = testutil::load("karnataka.csv");
    TdnnConfig cfg;
    cfg.seed = 99;
    const auto a = fit_model("holt-wbann", y.values(), cfg)->forecast(7);
    const auto b = fit_model("holt-wbann", y.values(), cfg)->forecast(7);
    CHECK(a == b);
}

TEST_CASE("errors name the phase") {
    CHECK_THROWS_AS(HybridModel(testutil::linear(10, 1, 1), BaseKind::holt, {}), InsufficientDataError);
    TdnnConfig bad;
    bad.learning_rate = 1e6;
    std::vector<double> y = testutil::normal_draws(60, 3, 100.0);
    try {
        HybridModel h(y, BaseKind::holt, bad);
        // a huge step may still stay finite; nothing to check then
    } catch (const FitError& e) {
        CHECK(std::string(e.what()).find("phase II") != std::string::npos);
    }
}

}  // TEST_SUITE
