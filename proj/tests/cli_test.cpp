#include <doctest.h>

#include <fstream>
#include <map>
#include <sstream>

#include "epicast/cli/commands.hpp"
#include "epicast/error.hpp"
#include "test_util.hpp"

using namespace epicast;
using epicast::cli::RunConfig;

namespace {

namespace fs = std::filesystem;

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("epicast_cli_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

fs::path write_series(const fs::path& dir, const std::vector<double>& values) {
    const auto path = dir / "series.csv";
    std::ofstream out(path);
    write_series_csv(out, testutil::make_series(values));
    return path;
}

std::map<std::string, std::string> contents(const cli::OutputSet& set) {
    return {set.files().begin(), set.files().end()};
}

std::vector<std::vector<std::string>> rows(const std::string& csv) {
    std::vector<std::vector<std::string>> out;
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        out.push_back(cells);
    }
    return out;
}

RunConfig quick(const std::string& command, const fs::path& input, const fs::path& out) {
    RunConfig c;
    c.command = command;
    c.input = input;
    c.out = out;
    c.tdnn.repeats = 2;
    c.tdnn.epochs = 100;
    return c;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("forecast: Holt continues the linear fixture") {
    auto cfg = quick("forecast", testutil::fixture("linear.csv"), scratch("linear"));
    cfg.models = {"holt"};
    const auto files = contents(cli::build_forecast(cfg));
    const auto table = rows(files.at("forecast.csv"));
    REQUIRE(table.size() == 8);
    CHECK(table[0] == std::vector<std::string>{"date", "point_forecast", "clamped_forecast"});
    // linear.csv is 100 + 25 i for i = 0..59
    for (std::size_t i = 1; i <= 7; ++i) {
        const std::string expected = std::to_string(100 + 25 * (59 + i));
        CHECK(table[i][1] == expected);
        CHECK(table[i][2] == expected);
    }
    CHECK(table[1][0] == "2020-05-13");
}

TEST_CASE("forecast: clamping only touches the reported column") {
    const auto dir = scratch("clamp");
    std::vector<double> y;
    for (int v = 57; v >= 0; v -= 3) y.push_back(v);
    auto cfg = quick("forecast", write_series(dir, y), dir);
    cfg.models = {"holt"};
    cfg.horizon = 1;
    const auto table = rows(contents(cli::build_forecast(cfg)).at("forecast.csv"));
    CHECK(table[1][1] == "-3");
    CHECK(table[1][2] == "0");
}

TEST_CASE("forecast: fixed seed gives byte-identical files") {
    const auto dir = scratch("determinism");
    auto cfg = quick("forecast", testutil::fixture("kerala.csv"), dir);
    cfg.horizon = 1;
    cfg.svg = true;
    cfg.weekly = true;
    const auto a = contents(cli::build_forecast(cfg));
    const auto b = contents(cli::build_forecast(cfg));
    CHECK(a == b);
    CHECK(a.count("forecast.svg") == 1);
    CHECK(a.count("weekly.csv") == 1);
    cfg.seed = 43;
    CHECK(contents(cli::build_forecast(cfg)).at("forecast.csv") != a.at("forecast.csv"));
}

TEST_CASE("forecast: weekly sums") {
    auto cfg = quick("forecast", testutil::fixture("linear.csv"), scratch("weekly"));
    cfg.models = {"holt"};
    cfg.horizon = 10;
    cfg.weekly = true;
    const auto table = rows(contents(cli::build_forecast(cfg)).at("weekly.csv"));
    REQUIRE(table.size() == 3);
    double first = 0;
    for (int i = 1; i <= 7; ++i) first += 100 + 25 * (59 + i);
    CHECK(std::stod(table[1][3]) == first);
    CHECK(table[2][2] == "3");
}

TEST_CASE("adjust: consistent panel needs no correction") {
    const auto dir = scratch("adjust_exact");
    const auto path = dir / "panel.csv";
    {
        std::ofstream out(path);
        out << "date,total,a,b\n";
        for (int t = 0; t < 40; ++t) {
            const int a = 10 + 2 * t, b = 50 + 3 * t;
            out << format_date(parse_date("2020-03-14") + std::chrono::days{t}) << ',' << a + b << ','
                << a << ',' << b << '\n';
        }
    }
    auto cfg = quick("adjust", path, dir);
    cfg.models = {"holt"};
    const auto files = contents(cli::build_adjust(cfg));
    const auto table = rows(files.at("adjust.csv"));
    REQUIRE(table.size() == 4);
    CHECK(table[0] == std::vector<std::string>{"state", "unadjusted", "weight", "correction", "adjusted"});
    CHECK(table[1][0] == "total");
    CHECK(table[1][2].empty());
    for (std::size_t r = 1; r < table.size(); ++r) {
        CHECK(std::abs(std::stod(table[r][3])) < 1e-9);
        CHECK(table[r][1] == table[r][4]);
    }
}

TEST_CASE("adjust: a state without enough reported data is excluded") {
    const auto dir = scratch("adjust_excluded");
    const auto path = dir / "panel.csv";
    const auto noise = testutil::normal_draws(60, 4, 5.0);
    {
        std::ofstream out(path);
        out << "date,total,a,b,late\n";
        for (int t = 0; t < 60; ++t) {
            const double a = 100 + 2 * t + noise[t], b = 80 + t - noise[t] / 2, late = t >= 57 ? 4 : 0;
            out << format_date(parse_date("2020-03-14") + std::chrono::days{t}) << ','
                << format_number(a + b + late + 3) << ',' << format_number(a) << ','
                << format_number(b) << ',' << late << '\n';
        }
    }
    auto cfg = quick("adjust", path, dir);
    cfg.models = {"holt-wbann"};
    const auto files = contents(cli::build_adjust(cfg));
    const auto table = rows(files.at("adjust.csv"));
    REQUIRE(table.size() == 4);
    CHECK(std::stod(table[2][2]) + std::stod(table[3][2]) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(files.at("adjust_summary.csv").find("excluded:late") != std::string::npos);
    double states = 0.0;
    for (std::size_t r = 2; r < table.size(); ++r) states += std::stod(table[r][4]);
    CHECK(std::stod(table[1][4]) == doctest::Approx(states).epsilon(1e-12));
}

TEST_CASE("monitor: single model dominates") {
    const auto dir = scratch("monitor");
    auto cfg = quick("monitor", testutil::fixture("linear.csv"), dir);
    cfg.models = {"holt"};
    const auto files = contents(cli::build_monitor(cfg));
    const auto dom = rows(files.at("dominance.csv"));
    REQUIRE(dom.size() == 2);
    CHECK(dom[1][0] == "holt");
    CHECK(dom[1][1] == "100");
    CHECK(rows(files.at("monitor.csv"))[0] == std::vector<std::string>{"origin", "model", "rmse", "mae", "m"});
    CHECK(rows(files.at("timeline.csv")).size() == 1 + origin_count(60, 4));
    CHECK(cfg.window == 4);
}

TEST_CASE("shelflife: 0.2 percent per day reports 25.0 days") {
    const auto dir = scratch("shelflife");
    const std::size_t m = 100;
    std::vector<double> y;
    for (std::size_t t = 1; t <= m; ++t) y.push_back(1000.0 + 10.0 * static_cast<double>(t));
    for (std::size_t i = 1; i <= 60; ++i) {
        const double forecast = 1000.0 + 10.0 * static_cast<double>(m + i);
        y.push_back(forecast / (1.0 - 0.002 * static_cast<double>(i)));
    }
    auto cfg = quick("shelflife", write_series(dir, y), dir);
    cfg.models = {"holt"};
    cfg.train_len = m;
    const auto files = contents(cli::build_shelflife(cfg));
    CHECK(files.at("shelflife.txt").find("shelf_life_days: 25.0\n") != std::string::npos);
    CHECK(rows(files.at("ape.csv"))[0] == std::vector<std::string>{"t", "ape", "fitted_line"});
    CHECK(rows(files.at("ape.csv")).size() == 61);
}

TEST_CASE("r0: flat incidence reports 1") {
    const auto dir = scratch("r0");
    auto cfg = quick("r0", write_series(dir, std::vector<double>(40, 25.0)), dir);
    const auto table = rows(contents(cli::build_r0(cfg)).at("r0.csv"));
    REQUIRE(table.size() == 2);
    CHECK(table[0] == std::vector<std::string>{"location", "method", "r0", "ci_lower", "ci_upper", "mse"});
    CHECK(table[1][1] == "growth");
    CHECK(table[1][2] == "1");
}

TEST_CASE("r0: panel input gives one row per location, SIR on request") {
    const auto dir = scratch("r0_panel");
    auto cfg = quick("r0", testutil::fixture("india_panel.csv"), dir);
    CHECK(rows(contents(cli::build_r0(cfg)).at("r0.csv")).size() == 8);
    cfg.input = testutil::fixture("india.csv");
    cfg.population = 1.38e9;
    const auto table = rows(contents(cli::build_r0(cfg)).at("r0.csv"));
    REQUIRE(table.size() == 3);
    CHECK(table[2][1] == "sir");
    CHECK(table[2][3].empty());
}

TEST_CASE("run: failures exit nonzero and leave nothing behind") {
    const auto dir = scratch("failure");
    auto cfg = quick("forecast", dir / "missing.csv", dir / "out");
    CHECK(cli::run(cfg) != 0);
    CHECK_FALSE(fs::exists(dir / "out" / "forecast.csv"));

    cfg.input = testutil::fixture("linear.csv");
    cfg.models = {"holt"};
    CHECK(cli::run(cfg) == 0);
    CHECK(fs::exists(dir / "out" / "forecast.csv"));

    cfg.command = "unknown";
    CHECK(cli::run(cfg) != 0);
}

TEST_CASE("output set removes files written before a failure") {
    const auto dir = scratch("partial");
    fs::create_directories(dir / "blocked");
    cli::OutputSet set(dir);
    set.add("first.csv", "a\n");
    set.add("blocked", "b\n");  // a directory of that name exists
    CHECK_THROWS(set.commit());
    CHECK_FALSE(fs::exists(dir / "first.csv"));
}

}  // TEST_SUITE
