#include "epicast/adjust.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>

#include "epicast/error.hpp"

namespace epicast {

namespace {

std::vector<double> normalise(std::vector<double> scores) {
    const double total = std::accumulate(scores.begin(), scores.end(), 0.0);
    const double n = static_cast<double>(scores.size());
    if (!(total > 0.0) || !std::isfinite(total)) {
        return std::vector<double>(scores.size(), 1.0 / n);
    }
    for (double& s : scores) s /= total;
    return scores;
}

bool all_finite(std::span<const double> v) {
    for (double x : v) {
        if (!std::isfinite(x)) return false;
    }
    return true;
}

}  // namespace

WeightMode WeightMode::parse(const std::string& text) {
    if (text == "last") return last_point();
    auto inner = [&](const std::string& prefix) -> std::string {
        if (text.size() > prefix.size() + 1 && text.rfind(prefix + "(", 0) == 0 && text.back() == ')') {
            return text.substr(prefix.size() + 1, text.size() - prefix.size() - 2);
        }
        return {};
    };
    if (auto arg = inner("window"); !arg.empty()) {
        char* end = nullptr;
        const long k = std::strtol(arg.c_str(), &end, 10);
        if (end && *end == '\0' && k >= 1) return windowed(static_cast<std::size_t>(k));
    }
    if (auto arg = inner("ewma"); !arg.empty()) {
        char* end = nullptr;
        const double lambda = std::strtod(arg.c_str(), &end);
        if (end && *end == '\0' && lambda > 0.0 && lambda <= 1.0) return ewma(lambda);
    }
    throw DomainError("invalid weight mode '" + text + "'; expected last, window(k) or ewma(lambda)");
}

std::string WeightMode::str() const {
    switch (kind) {
        case Kind::last: return "last";
        case Kind::window: return "window(" + std::to_string(window) + ")";
        case Kind::ewma: {
            std::string s = std::to_string(lambda);
            while (s.size() > 1 && s.back() == '0') s.pop_back();
            return "ewma(" + s + ")";
        }
    }
    return "last";
}

void AdjustmentInput::validate() const {
    const std::size_t n = state_forecasts.size();
    if (n == 0) throw DomainError("adjustment needs at least one state");
    if (last_observed_states.size() != n || last_fitted_states.size() != n) {
        throw DomainError("adjustment input vectors differ in length");
    }
    if (!state_residual_history.empty() && state_residual_history.size() != n) {
        throw DomainError("residual history must have one entry per state");
    }
    if (!all_finite(state_forecasts) || !all_finite(last_observed_states) ||
        !all_finite(last_fitted_states) || !std::isfinite(national_forecast) ||
        !std::isfinite(last_observed_national) || !std::isfinite(last_fitted_national)) {
        throw DomainError("adjustment input contains non-finite values");
    }
}

std::string to_string(AdjustBranch branch) {
    return branch == AdjustBranch::distribute_to_states ? "distribute-to-states"
                                                        : "national-follows-states";
}

std::vector<double> compute_weights(std::span<const double> last_observed_states,
                                    std::span<const double> last_fitted_states) {
    if (last_observed_states.size() != last_fitted_states.size() || last_observed_states.empty()) {
        throw DomainError("compute_weights: need equal, non-empty vectors");
    }
    std::vector<double> sq(last_observed_states.size());
    for (std::size_t i = 0; i < sq.size(); ++i) {
        const double r = last_observed_states[i] - last_fitted_states[i];
        sq[i] = r * r;
    }
    return normalise(std::move(sq));
}

std::vector<double> compute_weights(const std::vector<std::vector<double>>& history,
                                    const WeightMode& mode) {
    if (history.empty()) throw DomainError("compute_weights: no states");
    std::vector<double> scores(history.size(), 0.0);
    for (std::size_t i = 0; i < history.size(); ++i) {
        const auto& h = history[i];
        if (h.empty()) throw DomainError("compute_weights: empty residual history");
        switch (mode.kind) {
            case WeightMode::Kind::last:
                scores[i] = h.back() * h.back();
                break;
            case WeightMode::Kind::window: {
                const std::size_t k = std::min(mode.window, h.size());
                double acc = 0.0;
                for (std::size_t j = h.size() - k; j < h.size(); ++j) acc += h[j] * h[j];
                scores[i] = acc / static_cast<double>(k);
                break;
            }
            case WeightMode::Kind::ewma: {
                double acc = 0.0, norm = 0.0, w = 1.0;
                for (std::size_t j = h.size(); j-- > 0;) {
                    acc += w * h[j] * h[j];
                    norm += w;
                    w *= mode.lambda;
                }
                scores[i] = acc / norm;
                break;
            }
        }
    }
    return normalise(std::move(scores));
}

double compute_discrepancy(const AdjustmentInput& input) {
    const double sum = std::accumulate(input.state_forecasts.begin(), input.state_forecasts.end(), 0.0);
    return input.national_forecast - sum;
}

AdjustmentResult adjust_forecasts(const AdjustmentInput& input, const WeightMode& mode) {
    input.validate();
    const std::size_t n = input.state_forecasts.size();
    AdjustmentResult res;
    res.discrepancy = compute_discrepancy(input);
    res.national_error = std::abs(input.last_observed_national - input.last_fitted_national);
    double state_residual_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        state_residual_sum += input.last_observed_states[i] - input.last_fitted_states[i];
    }
    res.states_error = std::abs(state_residual_sum);

    if (mode.kind == WeightMode::Kind::last) {
        res.weights = compute_weights(input.last_observed_states, input.last_fitted_states);
    } else {
        if (input.state_residual_history.empty()) {
            throw DomainError("weight mode " + mode.str() + " needs per-state residual histories");
        }
        res.weights = compute_weights(input.state_residual_history, mode);
    }

    res.corrected_state_forecasts = input.state_forecasts;
    if (res.national_error <= res.states_error) {
        res.branch = AdjustBranch::distribute_to_states;
        for (std::size_t i = 0; i < n; ++i) {
            res.corrected_state_forecasts[i] += res.weights[i] * res.discrepancy;
        }
        res.corrected_national_forecast = input.national_forecast;
    } else {
        res.branch = AdjustBranch::national_follows_states;
        res.corrected_national_forecast =
            std::accumulate(input.state_forecasts.begin(), input.state_forecasts.end(), 0.0);
    }
    return res;
}

}  // namespace epicast
