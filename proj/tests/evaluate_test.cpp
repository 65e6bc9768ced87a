#include <doctest.h>

#include <cmath>
#include <numeric>

#include "epicast/error.hpp"
#include "epicast/holt.hpp"
#include "epicast/metrics.hpp"
#include "epicast/monitor.hpp"
#include "epicast/shelf_life.hpp"
#include "test_util.hpp"

using namespace epicast;

namespace {

std::vector<ApePoint> ape_ramp(std::size_t m, std::size_t count, double per_day) {
    std::vector<ApePoint> pts;
    for (std::size_t i = 1; i <= count; ++i) {
        pts.push_back({static_cast<double>(m + i), per_day * static_cast<double>(i)});
    }
    return pts;
}

}  // namespace

TEST_SUITE("evaluate") {

TEST_CASE("error metrics") {
    const std::vector<double> a{1, 2}, same{1, 2}, off{4, 6};
    CHECK(rmse(a, same) == 0.0);
    CHECK(mae(a, same) == 0.0);
    CHECK(rmse(a, off) == doctest::Approx(std::sqrt(12.5)));
    CHECK(mae(a, off) == 3.5);
    CHECK(rmse(std::vector<double>{0}, std::vector<double>{7}) == 7.0);
    CHECK(mae(std::vector<double>{0, 0}, std::vector<double>{-5, 5}) == 5.0);
    CHECK(m_metric(4.0, 3.0) == 3.5);
    CHECK_THROWS_AS(rmse(a, std::vector<double>{1}), DomainError);
    CHECK_THROWS_AS(mae(std::vector<double>{}, std::vector<double>{}), DomainError);
}

TEST_CASE("absolute percent error") {
    CHECK(ape(100, 95) == 5.0);
    CHECK(ape(-100, -95) == 5.0);
    CHECK_THROWS_AS(ape(0, 1), DomainError);
}

TEST_CASE("origin count") {
    CHECK(origin_count(303, 4) == (303 - 4 + 1) - 151);
    CHECK(origin_count(272, 4) == 133);
    CHECK(origin_count(12, 4) == 3);
}

TEST_CASE("default window is 4") {
    CHECK(MonitorOptions{}.window == 4);
}

TEST_CASE("single model dominates") {
    const auto s = testutil::make_series(testutil::linear(24, 3, 1.5));
    const auto r = monitor(s, {"holt"});
    CHECK(r.dominance == std::vector<double>{100.0});
    CHECK(r.mode_winner == 0);
}

TEST_CASE("ties go to the first model") {
    auto y = testutil::linear(30, 10, 2);
    const auto noise = testutil::normal_draws(y.size(), 5, 3.0);
    for (std::size_t t = 0; t < y.size(); ++t) y[t] += noise[t];
    const auto r = monitor(testutil::make_series(y), {"holt", "holt"});
    CHECK(r.dominance == std::vector<double>{100.0, 0.0});
    for (auto p : r.psi) CHECK(p == 0);
}

TEST_CASE("Holt wins every window on a linear trend") {
    const std::size_t t = 40, k = 4;
    const auto y = testutil::linear(t, 100.0, 7.0);
    const auto s = testutil::make_series(y);
    const auto r = monitor(s, {"holt", "arima(0,1,0)"});
    CHECK(r.origins.size() == origin_count(t, k));
    CHECK(r.origins.front() == t / 2 + 1);
    CHECK(r.origins.back() == t - k + 1);
    CHECK(r.dominance[0] == 100.0);
    for (auto p : r.psi) CHECK(p == 0);

    // re-evaluate each window by hand
    for (std::size_t o = 0; o < r.origins.size(); ++o) {
        const std::size_t T = r.origins[o];
        const HoltModel h(std::span<const double>(y).first(T - 1));
        const auto fc = h.forecast(k);
        double rw_sq = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            CHECK(std::abs(fc[i] - y[T - 1 + i]) < 1e-9);
            const double e = y[T - 1 + i] - y[T - 2];
            rw_sq += e * e;
        }
        const auto& rec = r.records[o * 2 + 1];
        CHECK(rec.model == "arima(0,1,0)");
        CHECK(rec.rmse == doctest::Approx(std::sqrt(rw_sq / k)));
    }
}

TEST_CASE("report invariants on a noisy series") {
    auto y = testutil::linear(36, 50, 1);
    const auto noise = testutil::normal_draws(y.size(), 8, 6.0);
    for (std::size_t t = 0; t < y.size(); ++t) y[t] += noise[t];
    MonitorOptions opt;
    opt.window = 3;
    const auto r = monitor(testutil::make_series(y), {"arima(0,1,0)", "holt", "arima(1,0,0)"}, opt);
    CHECK(r.records.size() == 3 * r.origins.size());
    for (const auto& rec : r.records) {
        CHECK(rec.m == (rec.rmse + rec.mae) / 2);
        CHECK(rec.rmse >= rec.mae);
    }
    CHECK(std::abs(std::accumulate(r.dominance.begin(), r.dominance.end(), 0.0) - 100.0) < 1e-9);

    std::vector<double> recency(3, 0.0);
    for (std::size_t o = 0; o < r.origins.size(); ++o) {
        recency[r.psi[o]] += std::pow(0.9, static_cast<double>(r.origins.back() - r.origins[o]));
    }
    for (std::size_t j = 0; j < 3; ++j) CHECK(r.recency_score[j] == doctest::Approx(recency[j]));
}

TEST_CASE("monitor preconditions") {
    const auto s = testutil::make_series(testutil::linear(11, 1, 1));
    CHECK_THROWS_AS(monitor(s, {"holt"}), InsufficientDataError);
    const auto ok = testutil::make_series(testutil::linear(30, 1, 1));
    CHECK_THROWS_AS(monitor(ok, {}), DomainError);
    CHECK_THROWS_AS(monitor(ok, {"lstm"}), DomainError);
}

TEST_CASE("shelf life of a 0.2 percent per day ramp") {
    const auto r = shelf_life_from_ape(ape_ramp(122, 150, 0.2), 122);
    CHECK_FALSE(r.unbounded);
    CHECK(std::abs(r.shelf_days - 25.0) < 0.01);
    CHECK(r.slope == doctest::Approx(0.2));
}

TEST_CASE("shelf life regression is linear in the APE") {
    const auto base = shelf_life_from_ape(ape_ramp(50, 40, 0.3), 50);
    auto pts = ape_ramp(50, 40, 0.3);
    for (auto& p : pts) p.ape *= 2.0;
    const auto scaled = shelf_life_from_ape(pts, 50);
    CHECK(scaled.slope == doctest::Approx(2.0 * base.slope));
    CHECK(scaled.intercept == doctest::Approx(2.0 * base.intercept));
    CHECK(scaled.crossing_t == doctest::Approx((5.0 - scaled.intercept) / scaled.slope));
}

TEST_CASE("flat or improving APE never crosses") {
    std::vector<ApePoint> pts;
    for (int t = 1; t <= 10; ++t) pts.push_back({static_cast<double>(t), 3.0 - 0.1 * t});
    const auto r = shelf_life_from_ape(pts, 0);
    CHECK(r.unbounded);
    CHECK(std::isinf(r.shelf_days));
}

TEST_CASE("shelf life end to end") {
    const auto s = testutil::make_series(testutil::linear(40, 10, 2));
    const auto r = shelf_life(s, 30, "holt");
    CHECK(r.ape_series.size() == 10);
    CHECK(r.ape_series.front().t == 31.0);
    for (const auto& p : r.ape_series) CHECK(p.ape < 1e-9);

    auto y = testutil::linear(40, 10, 2);
    y[35] = 0.0;
    try {
        shelf_life(testutil::make_series(y), 30, "holt");
        FAIL("expected an error");
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("2020-04-18") != std::string::npos);
    }
    CHECK_THROWS_AS(shelf_life(s, 40, "holt"), DomainError);
}

}  // TEST_SUITE
