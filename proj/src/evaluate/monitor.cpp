#include "epicast/monitor.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <span>

#include "epicast/error.hpp"
#include "epicast/hybrid.hpp"
#include "epicast/log.hpp"
#include "epicast/metrics.hpp"

namespace epicast {

std::size_t origin_count(std::size_t t, std::size_t k) {
    if (k == 0 || t + 1 < k + t / 2 + 1) return 0;
    return (t - k + 1) - t / 2;
}

MonitorReport monitor(const UnivariateSeries& series, const std::vector<std::string>& models,
                      const MonitorOptions& options) {
    const std::size_t t = series.size();
    const std::size_t k = options.window;
    if (k < 1) throw DomainError("monitor: window width must be >= 1");
    if (models.empty()) throw DomainError("monitor: no models given");
    for (const auto& m : models) {
        if (!is_known_model(m)) throw DomainError("monitor: unknown model '" + m + "'");
    }
    if (t < 2 * k + 4) {
        throw InsufficientDataError("monitor: series of length " + std::to_string(t) +
                                    " is too short for window " + std::to_string(k) +
                                    "; minimum length is " + std::to_string(2 * k + 4));
    }

    MonitorReport report;
    report.window = k;
    report.models = models;
    report.dominance.assign(models.size(), 0.0);
    report.recency_score.assign(models.size(), 0.0);

    const auto values = series.values();
    const std::size_t first = t / 2 + 1;
    const std::size_t last = t - k + 1;
    for (std::size_t origin = first; origin <= last; ++origin) {
        report.origins.push_back(origin);
        const auto train = values.first(origin - 1);
        const auto actual = values.subspan(origin - 1, k);
        TdnnConfig cfg = options.tdnn;
        cfg.seed = options.tdnn.seed + origin;

        std::size_t best = 0;
        double best_m = std::numeric_limits<double>::infinity();
        // Hybrids reuse the plain base fit when both are monitored; the
        // result is identical to refitting the base.
        std::shared_ptr<const FittedModel> holt_base, arima_base;
        auto base_for = [&](BaseKind kind) -> std::shared_ptr<const FittedModel> {
            auto& slot = kind == BaseKind::holt ? holt_base : arima_base;
            if (!slot) slot = fit_model(kind == BaseKind::holt ? "holt" : "arima", train, cfg);
            return slot;
        };
        for (std::size_t j = 0; j < models.size(); ++j) {
            std::shared_ptr<const FittedModel> model;
            if (models[j] == "holt" || models[j] == "arima") {
                model = base_for(models[j] == "holt" ? BaseKind::holt : BaseKind::arima);
            } else if (models[j] == "holt-wbann" || models[j] == "arima-wbf") {
                const auto kind = models[j] == "holt-wbann" ? BaseKind::holt : BaseKind::arima;
                model = std::make_shared<HybridModel>(base_for(kind), kind, cfg);
            } else {
                model = fit_model(models[j], train, cfg);
            }
            const auto fc = model->forecast(k);
            WindowMetricRecord rec;
            rec.origin = origin;
            rec.model = models[j];
            rec.rmse = rmse(actual, fc);
            rec.mae = mae(actual, fc);
            rec.m = m_metric(rec.rmse, rec.mae);
            if (rec.m < best_m) {
                best_m = rec.m;
                best = j;
            }
            report.records.push_back(std::move(rec));
        }
        report.psi.push_back(best);
        log::debug("monitor origin " + std::to_string(origin) + "/" + std::to_string(last) +
                   ": best " + models[best]);
    }

    const double count = static_cast<double>(report.origins.size());
    std::vector<std::size_t> wins(models.size(), 0);
    for (std::size_t i = 0; i < report.psi.size(); ++i) {
        ++wins[report.psi[i]];
        const double age = static_cast<double>(last - report.origins[i]);
        report.recency_score[report.psi[i]] += std::pow(options.recency_lambda, age);
    }
    for (std::size_t j = 0; j < models.size(); ++j) {
        report.dominance[j] = 100.0 * static_cast<double>(wins[j]) / count;
        if (wins[j] > wins[report.mode_winner]) report.mode_winner = j;
        if (report.recency_score[j] > report.recency_score[report.recency_winner]) {
            report.recency_winner = j;
        }
    }
    return report;
}

}  // namespace epicast
