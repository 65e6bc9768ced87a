#include "epicast/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "epicast/adjust.hpp"
#include "epicast/cli/svg.hpp"
#include "epicast/csv.hpp"
#include "epicast/error.hpp"
#include "epicast/hybrid.hpp"
#include "epicast/log.hpp"
#include "epicast/shelf_life.hpp"

namespace epicast::cli {

namespace {

TdnnConfig tdnn_for(const RunConfig& config, std::uint64_t seed) {
    TdnnConfig cfg = config.tdnn;
    cfg.seed = seed;
    return cfg;
}

std::string single_model(const RunConfig& config, const char* fallback) {
    if (config.models.empty()) return fallback;
    if (config.models.size() > 1) {
        throw DomainError(config.command + " takes a single --model");
    }
    return config.models.front();
}

std::string num(double v) { return format_number(v); }

std::size_t header_columns(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path.string() + "'");
    std::string header;
    std::getline(in, header);
    return static_cast<std::size_t>(std::count(header.begin(), header.end(), ',')) + 1;
}

// A region that has not started reporting shows leading zeros; models are
// fitted from its first non-zero day.
std::span<const double> reported(const UnivariateSeries& s) {
    const auto v = s.values();
    const auto first = std::find_if(v.begin(), v.end(), [](double x) { return x != 0.0; });
    return v.subspan(static_cast<std::size_t>(first - v.begin()));
}

std::vector<double> as_index(std::size_t first, std::size_t count) {
    std::vector<double> x(count);
    for (std::size_t i = 0; i < count; ++i) x[i] = static_cast<double>(first + i);
    return x;
}

}  // namespace

void OutputSet::add(std::string name, std::string content) {
    files_.emplace_back(std::move(name), std::move(content));
}

std::vector<std::filesystem::path> OutputSet::commit() const {
    std::vector<std::filesystem::path> written;
    try {
        std::filesystem::create_directories(dir_);
        for (const auto& [name, content] : files_) {
            const auto path = dir_ / name;
            std::ofstream out(path, std::ios::binary | std::ios::trunc);
            if (!out) throw Error("cannot write '" + path.string() + "'");
            written.push_back(path);
            out << content;
            out.close();
            if (!out) throw Error("failed writing '" + path.string() + "'");
        }
    } catch (...) {
        std::error_code ec;
        for (const auto& p : written) std::filesystem::remove(p, ec);
        throw;
    }
    return written;
}

OutputSet build_forecast(const RunConfig& config) {
    const auto series = parse_series_csv(config.input);
    const std::string tag = single_model(config, "holt-wbann");
    if (config.horizon == 0) throw DomainError("forecast horizon must be positive");
    const auto model = fit_model(tag, series.values(), tdnn_for(config, config.seed));
    const auto fc = model->forecast(config.horizon);
    const Date last = series.date(series.size() - 1);

    OutputSet out(config.out);
    std::ostringstream csv;
    csv << "date,point_forecast,clamped_forecast\n";
    for (std::size_t i = 0; i < fc.size(); ++i) {
        const Date d = last + std::chrono::days{static_cast<int>(i + 1)};
        csv << format_date(d) << ',' << num(fc[i]) << ',' << num(std::max(0.0, fc[i])) << '\n';
    }
    out.add("forecast.csv", csv.str());

    if (config.weekly) {
        std::ostringstream weekly;
        weekly << "week_start,week_end,days,point_forecast,clamped_forecast\n";
        for (std::size_t start = 0; start < fc.size(); start += 7) {
            const std::size_t end = std::min(start + 7, fc.size());
            double raw = 0.0, clamped = 0.0;
            for (std::size_t i = start; i < end; ++i) {
                raw += fc[i];
                clamped += std::max(0.0, fc[i]);
            }
            weekly << format_date(last + std::chrono::days{static_cast<int>(start + 1)}) << ','
                   << format_date(last + std::chrono::days{static_cast<int>(end)}) << ','
                   << end - start << ',' << num(raw) << ',' << num(clamped) << '\n';
        }
        out.add("weekly.csv", weekly.str());
    }

    if (config.svg) {
        const std::size_t tail = std::min<std::size_t>(series.size(), 60);
        const std::size_t first = series.size() - tail;
        PlotLine history{series.name(), as_index(first + 1, tail),
                         std::vector<double>(series.values().begin() + static_cast<std::ptrdiff_t>(first),
                                             series.values().end())};
        PlotLine forecast{tag + " forecast", as_index(series.size() + 1, fc.size()), fc};
        out.add("forecast.svg", line_chart_svg(series.name() + ": " + tag, {history, forecast}));
    }
    return out;
}

OutputSet build_adjust(const RunConfig& config) {
    const auto panel = parse_panel_csv(config.input);
    const std::string tag = single_model(config, "holt-wbann");
    const WeightMode mode = WeightMode::parse(config.weight_mode);

    const auto national = fit_model(tag, reported(panel.national()), tdnn_for(config, config.seed));
    const auto& nf = national->fitted();
    if (nf.values.empty() || nf.end() != national->observed().size()) {
        throw FitError("national model has no fitted value at the last date");
    }

    AdjustmentInput input;
    input.national_forecast = national->forecast(1).front();
    input.last_observed_national = panel.national()[panel.length() - 1];
    input.last_fitted_national = nf.values.back();

    std::vector<std::string> names;
    std::vector<std::pair<std::string, std::string>> excluded;
    for (std::size_t i = 0; i < panel.n(); ++i) {
        const auto& state = panel.states()[i];
        try {
            const auto model =
                fit_model(tag, reported(state), tdnn_for(config, config.seed + 100 * (i + 1)));
            const auto& sf = model->fitted();
            if (sf.values.empty() || sf.end() != model->observed().size()) {
                throw InsufficientDataError("no fitted value at the last date");
            }
            input.state_forecasts.push_back(model->forecast(1).front());
            input.last_observed_states.push_back(state[state.size() - 1]);
            input.last_fitted_states.push_back(sf.values.back());
            input.state_residual_history.push_back(model->residuals());
            names.push_back(state.name());
        } catch (const Error& e) {
            log::warn("excluding '" + state.name() + "': " + e.what());
            excluded.emplace_back(state.name(), e.what());
        }
    }
    if (names.empty()) throw FitError("no state series could be modelled");

    const auto result = adjust_forecasts(input, mode);

    OutputSet out(config.out);
    std::ostringstream csv;
    csv << "state,unadjusted,weight,correction,adjusted\n";
    csv << panel.national().name() << ',' << num(input.national_forecast) << ",,"
        << num(result.corrected_national_forecast - input.national_forecast) << ','
        << num(result.corrected_national_forecast) << '\n';
    for (std::size_t i = 0; i < names.size(); ++i) {
        csv << names[i] << ',' << num(input.state_forecasts[i]) << ',' << num(result.weights[i]) << ','
            << num(result.corrected_state_forecasts[i] - input.state_forecasts[i]) << ','
            << num(result.corrected_state_forecasts[i]) << '\n';
    }
    out.add("adjust.csv", csv.str());

    const Date target = panel.national().date(panel.length() - 1) + std::chrono::days{1};
    std::ostringstream summary;
    summary << "key,value\n";
    summary << "model," << tag << '\n';
    summary << "forecast_date," << format_date(target) << '\n';
    summary << "weight_mode," << mode.str() << '\n';
    summary << "branch," << to_string(result.branch) << '\n';
    summary << "discrepancy," << num(result.discrepancy) << '\n';
    summary << "national_error," << num(result.national_error) << '\n';
    summary << "states_error," << num(result.states_error) << '\n';
    summary << "last_consistency_defect," << num(panel.defect().back()) << '\n';
    for (const auto& [name, reason] : excluded) {
        std::string clean = reason;
        std::replace(clean.begin(), clean.end(), ',', ';');
        summary << "excluded:" << name << ',' << clean << '\n';
    }
    out.add("adjust_summary.csv", summary.str());
    return out;
}

OutputSet build_monitor(const RunConfig& config) {
    const auto series = parse_series_csv(config.input);
    std::vector<std::string> models = config.models;
    if (models.empty()) models = {"arima", "arima-wbf", "holt", "holt-wbann"};
    MonitorOptions opt;
    opt.window = config.window;
    opt.tdnn = tdnn_for(config, config.seed);
    const auto report = monitor(series, models, opt);

    OutputSet out(config.out);
    std::ostringstream records;
    records << "origin,model,rmse,mae,m\n";
    for (const auto& r : report.records) {
        records << r.origin << ',' << r.model << ',' << num(r.rmse) << ',' << num(r.mae) << ','
                << num(r.m) << '\n';
    }
    out.add("monitor.csv", records.str());

    std::ostringstream dominance;
    dominance << "model,dominance,recency_score\n";
    for (std::size_t j = 0; j < models.size(); ++j) {
        dominance << models[j] << ',' << num(report.dominance[j]) << ','
                  << num(report.recency_score[j]) << '\n';
    }
    out.add("dominance.csv", dominance.str());

    std::ostringstream timeline;
    timeline << "origin,date";
    for (const auto& m : models) timeline << ',' << m;
    timeline << ",winner\n";
    const std::size_t nm = models.size();
    for (std::size_t o = 0; o < report.origins.size(); ++o) {
        timeline << report.origins[o] << ',' << format_date(series.date(report.origins[o] - 1));
        for (std::size_t j = 0; j < nm; ++j) timeline << ',' << num(report.records[o * nm + j].m);
        timeline << ',' << models[report.psi[o]] << '\n';
    }
    out.add("timeline.csv", timeline.str());

    std::ostringstream winners;
    winners << "criterion,model\n";
    winners << "mode," << models[report.mode_winner] << '\n';
    winners << "recency," << models[report.recency_winner] << '\n';
    out.add("winners.csv", winners.str());

    if (config.svg) {
        std::vector<PlotLine> lines;
        std::vector<double> x(report.origins.begin(), report.origins.end());
        for (std::size_t j = 0; j < nm; ++j) {
            PlotLine line{models[j], x, {}};
            for (std::size_t o = 0; o < report.origins.size(); ++o) {
                line.y.push_back(report.records[o * nm + j].m);
            }
            lines.push_back(std::move(line));
        }
        out.add("monitor.svg", line_chart_svg(series.name() + ": moving-window m metric", lines));
    }
    return out;
}

OutputSet build_shelflife(const RunConfig& config) {
    const auto series = parse_series_csv(config.input);
    const std::string tag = single_model(config, "holt-wbann");
    std::size_t train = 0;
    if (config.train_len) {
        train = *config.train_len;
    } else {
        train = series.size() > 170 ? series.size() - 150 : series.size() / 2;
    }
    const auto res = shelf_life(series, train, tag, config.threshold_pct, tdnn_for(config, config.seed));

    OutputSet out(config.out);
    std::ostringstream ape_csv;
    ape_csv << "t,ape,fitted_line\n";
    for (const auto& p : res.ape_series) {
        ape_csv << num(p.t) << ',' << num(p.ape) << ',' << num(res.fitted_line(p.t)) << '\n';
    }
    out.add("ape.csv", ape_csv.str());

    std::ostringstream txt;
    txt << "model: " << tag << '\n';
    txt << "train_length: " << train << '\n';
    txt << "test_length: " << series.size() - train << '\n';
    txt << "threshold_pct: " << num(res.threshold_pct) << '\n';
    txt << "slope: " << num(res.slope) << '\n';
    txt << "intercept: " << num(res.intercept) << '\n';
    if (res.unbounded) {
        txt << "crossing_t: none\n";
        txt << "shelf_life_days: unbounded\n";
    } else {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.1f", res.shelf_days);
        txt << "crossing_t: " << num(res.crossing_t) << '\n';
        txt << "shelf_life_days: " << buf << '\n';
    }
    out.add("shelflife.txt", txt.str());

    if (config.svg) {
        PlotLine points{"APE", {}, {}};
        PlotLine line{"OLS fit", {}, {}};
        for (const auto& p : res.ape_series) {
            points.x.push_back(p.t);
            points.y.push_back(p.ape);
            line.x.push_back(p.t);
            line.y.push_back(res.fitted_line(p.t));
        }
        out.add("ape.svg", line_chart_svg(series.name() + ": APE of " + tag, {points, line}));
    }
    return out;
}

OutputSet build_r0(const RunConfig& config) {
    std::vector<UnivariateSeries> locations;
    const bool panel_input = header_columns(config.input) > 2;
    if (panel_input) {
        const auto panel = parse_panel_csv(config.input);
        locations.push_back(panel.national());
        for (const auto& s : panel.states()) locations.push_back(s);
    } else {
        locations.push_back(parse_series_csv(config.input));
    }

    OutputSet out(config.out);
    std::ostringstream csv;
    csv << "location,method,r0,ci_lower,ci_upper,mse\n";
    for (const auto& series : locations) {
        const auto window = default_growth_window(series, config.growth_window);
        const auto growth = fit_growth_rate(series, window);
        const auto est = r0_from_growth(growth.r, config.generation_interval, growth.stderr_r, growth.mse);
        csv << series.name() << ",growth," << num(est.r0) << ',' << num(est.ci_lower) << ','
            << num(est.ci_upper) << ',' << num(est.fit_mse) << '\n';
    }
    if (config.population) {
        if (panel_input) {
            log::warn("--population applies to single-series input only; SIR fit skipped");
        } else {
            const auto fit = sir_fit(locations.front(), *config.population);
            csv << locations.front().name() << ",sir," << num(fit.r0()) << ",,,"
                << num(fit.trajectory_mse) << '\n';
        }
    }
    out.add("r0.csv", csv.str());
    return out;
}

int run(const RunConfig& config) {
    try {
        OutputSet outputs(config.out);
        if (config.command == "forecast") {
            outputs = build_forecast(config);
        } else if (config.command == "adjust") {
            outputs = build_adjust(config);
        } else if (config.command == "monitor") {
            outputs = build_monitor(config);
        } else if (config.command == "shelflife") {
            outputs = build_shelflife(config);
        } else if (config.command == "r0") {
            outputs = build_r0(config);
        } else {
            throw DomainError("unknown command '" + config.command + "'");
        }
        for (const auto& path : outputs.commit()) log::info("wrote " + path.string());
        return 0;
    } catch (const std::exception& e) {
        log::error(config.command + ": " + e.what());
        return 1;
    }
}

}  // namespace epicast::cli
