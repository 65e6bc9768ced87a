#include "epicast/holt.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "epicast/error.hpp"

namespace epicast {

namespace {

void check_params(HoltParams p) {
    if (!(p.alpha > 0.0 && p.alpha <= 1.0) || !(p.beta > 0.0 && p.beta <= 1.0)) {
        throw DomainError("Holt smoothing constants must lie in (0, 1]");
    }
}

}  // namespace

HoltState holt_filter(std::span<const double> y, HoltParams params) {
    check_params(params);
    const std::size_t n = y.size();
    if (n < 2) {
        throw InsufficientDataError("Holt filter needs at least 2 observations, got " +
                                    std::to_string(n));
    }
    HoltState st;
    st.level.resize(n);
    st.trend.resize(n);
    st.fitted.offset = 1;
    st.fitted.values.resize(n - 1);
    st.level[0] = y[0];
    st.trend[0] = y[1] - y[0];
    for (std::size_t t = 1; t < n; ++t) {
        const double pred = st.level[t - 1] + st.trend[t - 1];
        const double err = y[t] - pred;
        st.fitted.values[t - 1] = pred;
        st.level[t] = pred + params.alpha * err;
        st.trend[t] = st.trend[t - 1] + params.beta * (params.alpha * err);
    }
    return st;
}

HoltState holt_filter(const UnivariateSeries& series, HoltParams params) {
    return holt_filter(series.values(), params);
}

double holt_sse(std::span<const double> y, HoltParams params) {
    if (y.size() < 2) {
        throw InsufficientDataError("Holt filter needs at least 2 observations");
    }
    double level = y[0];
    double trend = y[1] - y[0];
    double sse = 0.0;
    for (std::size_t t = 1; t < y.size(); ++t) {
        const double pred = level + trend;
        const double err = y[t] - pred;
        sse += err * err;
        level = pred + params.alpha * err;
        trend += params.beta * (params.alpha * err);
    }
    return sse;
}

HoltFit holt_fit(std::span<const double> y) {
    if (y.size() < 4) {
        throw InsufficientDataError("Holt fit needs at least 4 observations, got " +
                                    std::to_string(y.size()));
    }
    HoltParams best{};
    double best_sse = std::numeric_limits<double>::infinity();
    for (int a = 0; a < kHoltGridSize; ++a) {
        for (int b = 0; b < kHoltGridSize; ++b) {
            const HoltParams p{holt_grid_value(a), holt_grid_value(b)};
            const double sse = holt_sse(y, p);
            if (sse < best_sse) {
                best_sse = sse;
                best = p;
            }
        }
    }
    if (!std::isfinite(best_sse)) {
        throw FitError("Holt fit: no grid point gives a finite SSE");
    }
    return {best, holt_filter(y, best), best_sse};
}

HoltFit holt_fit(const UnivariateSeries& series) { return holt_fit(series.values()); }

std::vector<double> holt_forecast(const HoltState& state, std::size_t h) {
    std::vector<double> out(h);
    if (h == 0) return out;
    const double level = state.level.back();
    const double trend = state.trend.back();
    for (std::size_t i = 0; i < h; ++i) {
        out[i] = level + static_cast<double>(i + 1) * trend;
    }
    return out;
}

HoltModel::HoltModel(std::span<const double> y)
    : observed_(y.begin(), y.end()), fit_(holt_fit(observed_)) {}

}  // namespace epicast
