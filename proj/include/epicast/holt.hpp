#pragma once

#include <span>
#include <vector>

#include "epicast/forecaster.hpp"
#include "epicast/series.hpp"

namespace epicast {

/// Smoothing constants for the level (alpha) and trend (beta), both in (0, 1].
struct HoltParams {
    double alpha = 0.5;
    double beta = 0.5;
};

struct HoltState {
    std::vector<double> level;
    std::vector<double> trend;
    FittedValues fitted;  // one-step predictions L_{t-1} + T_{t-1}, from t = 2
};

/**
 * Additive-trend exponential smoothing filter.
 *
 * Initialised with L_1 = y_1 and T_1 = y_2 - y_1, then
 *   L_t = alpha y_t + (1 - alpha)(L_{t-1} + T_{t-1})
 *   T_t = beta (L_t - L_{t-1}) + (1 - beta) T_{t-1}
 * evaluated in error-correction form so that a series lying exactly on a
 * line is tracked without rounding drift.
 */
HoltState holt_filter(std::span<const double> y, HoltParams params);
HoltState holt_filter(const UnivariateSeries& series, HoltParams params);

/// Sum of squared one-step residuals for t >= 2, without storing the state.
double holt_sse(std::span<const double> y, HoltParams params);

struct HoltFit {
    HoltParams params;
    HoltState state;
    double sse = 0.0;
};

/// Exhaustive search over {0.01, ..., 1.00}^2; ties go to the smaller
/// alpha, then the smaller beta.
HoltFit holt_fit(std::span<const double> y);
HoltFit holt_fit(const UnivariateSeries& series);

/// L_t + i T_t for i = 1..h from the last filtered state.
std::vector<double> holt_forecast(const HoltState& state, std::size_t h);

inline constexpr int kHoltGridSize = 100;
inline constexpr double holt_grid_value(int index) { return (index + 1) / 100.0; }

class HoltModel final : public FittedModel {
public:
    explicit HoltModel(std::span<const double> y);

    std::string tag() const override { return "holt"; }
    std::span<const double> observed() const override { return observed_; }
    const FittedValues& fitted() const override { return fit_.state.fitted; }
    std::vector<double> forecast(std::size_t h) const override {
        return holt_forecast(fit_.state, h);
    }

    const HoltFit& fit() const noexcept { return fit_; }

private:
    std::vector<double> observed_;
    HoltFit fit_;
};

}  // namespace epicast
