#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "epicast/forecaster.hpp"

namespace epicast {

struct TdnnConfig {
    std::size_t lags = 4;
    std::size_t hidden = 3;  // ceil((lags + 1) / 2) for the default lags
    std::size_t repeats = 20;
    std::size_t epochs = 500;
    double learning_rate = 0.05;
    std::uint64_t seed = 42;
};

/// Throws DomainError unless lags, hidden, repeats, epochs >= 1 and the
/// learning rate is positive.
void validate(const TdnnConfig& config);

/// Supervised framing: row i = (x_i, ..., x_{i+p-1}), target x_{i+p}.
struct LagMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> inputs;  // row-major rows x cols
    std::vector<double> targets;

    std::span<const double> row(std::size_t i) const { return {inputs.data() + i * cols, cols}; }
};

LagMatrix make_lag_matrix(std::span<const double> series, std::size_t lags);

/**
 * One single-hidden-layer network: logistic hidden units, linear output.
 * Parameters are flattened as W1 (hidden x lags, row-major), b1 (hidden),
 * w2 (hidden), b2.
 */
struct TdnnWeights {
    std::size_t lags = 0;
    std::size_t hidden = 0;
    std::vector<double> params;

    static std::size_t param_count(std::size_t lags, std::size_t hidden) {
        return hidden * (lags + 2) + 1;
    }

    double predict(std::span<const double> window) const;

    bool operator==(const TdnnWeights&) const = default;
};

/// Mean squared error with a 1/2 factor: (1 / 2N) sum (f(x_i) - y_i)^2.
double tdnn_loss(const TdnnWeights& net, const LagMatrix& data);

/// Loss plus its exact gradient (back-propagation) written into `grad`.
double tdnn_loss_and_gradient(const TdnnWeights& net, const LagMatrix& data, std::span<double> grad);

/// Min-max map of training values onto [0, 1]. A constant series maps to 0
/// and inverts back to the constant.
struct MinMaxScaling {
    double min = 0.0;
    double max = 0.0;

    static MinMaxScaling fit(std::span<const double> x);
    bool degenerate() const noexcept { return !(max > min); }
    double scale(double v) const noexcept { return degenerate() ? 0.0 : (v - min) / (max - min); }
    double unscale(double s) const noexcept { return degenerate() ? min : min + s * (max - min); }
};

/// An ensemble of `repeats` independently initialised networks whose
/// predictions are averaged.
struct TdnnModel {
    TdnnConfig config;
    MinMaxScaling scaling;
    std::vector<TdnnWeights> nets;
    FittedValues fitted;  // one-step in-sample predictions, offset = lags

    /// Prediction in original units from the last `lags` values (oldest first).
    double predict(std::span<const double> window) const;
};

TdnnModel tdnn_train(std::span<const double> series, const TdnnConfig& config);

/// Recursive multi-step forecast; each prediction is fed back as the newest lag.
std::vector<double> tdnn_forecast(const TdnnModel& model, std::span<const double> history, std::size_t h);

}  // namespace epicast
