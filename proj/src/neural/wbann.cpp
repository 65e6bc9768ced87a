#include "epicast/wbann.hpp"

#include <future>
#include <string>
#include <thread>

#include "epicast/error.hpp"

namespace epicast {

WbannModel wbann_fit(std::span<const double> series, const TdnnConfig& config) {
    validate(config);
    if (series.size() < 16) {
        throw InsufficientDataError("WBANN needs at least 16 observations, got " +
                                    std::to_string(series.size()));
    }
    WbannModel model;
    model.levels = choose_levels(series.size());
    const auto components = modwt_haar(series, model.levels).components();

    // Components are independent (own data, own seed), so training them on
    // separate threads gives the same result as training them in order.
    auto train = [&](std::size_t c) {
        TdnnConfig cfg = config;
        cfg.seed = config.seed + c;
        return tdnn_train(components[c], cfg);
    };
    model.components.reserve(components.size());
    if (std::thread::hardware_concurrency() > 1) {
        std::vector<std::future<TdnnModel>> jobs;
        for (std::size_t c = 0; c < components.size(); ++c) {
            jobs.push_back(std::async(std::launch::async, train, c));
        }
        for (auto& job : jobs) model.components.push_back(job.get());
    } else {
        for (std::size_t c = 0; c < components.size(); ++c) model.components.push_back(train(c));
    }
    for (const auto& comp : components) {
        model.tails.emplace_back(comp.end() - static_cast<std::ptrdiff_t>(config.lags), comp.end());
    }

    model.fitted.offset = config.lags;
    model.fitted.values.assign(series.size() - config.lags, 0.0);
    for (const auto& m : model.components) {
        for (std::size_t i = 0; i < model.fitted.values.size(); ++i) {
            model.fitted.values[i] += m.fitted.values[i];
        }
    }
    return model;
}

std::vector<double> wbann_component_forecast(const WbannModel& model, std::size_t component,
                                             std::size_t h) {
    return tdnn_forecast(model.components.at(component), model.tails.at(component), h);
}

std::vector<double> wbann_forecast(const WbannModel& model, std::size_t h) {
    std::vector<double> out(h, 0.0);
    for (std::size_t c = 0; c < model.components.size(); ++c) {
        const auto part = wbann_component_forecast(model, c, h);
        for (std::size_t i = 0; i < h; ++i) out[i] += part[i];
    }
    return out;
}

}  // namespace epicast
