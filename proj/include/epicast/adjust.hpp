#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace epicast {

/// How the correction is apportioned across regional series.
struct WeightMode {
    enum class Kind { last, window, ewma };
    Kind kind = Kind::last;
    std::size_t window = 7;  // Kind::window: mean squared residual over the last `window` points
    double lambda = 0.9;     // Kind::ewma: weight lambda^age on squared residuals

    static WeightMode last_point() { return {}; }
    static WeightMode windowed(std::size_t k) { return {Kind::window, k, 0.9}; }
    static WeightMode ewma(double lambda) { return {Kind::ewma, 7, lambda}; }

    /// Parses `last`, `window(k)` or `ewma(lambda)`.
    static WeightMode parse(const std::string& text);
    std::string str() const;
};

struct AdjustmentInput {
    std::vector<double> state_forecasts;        // next-step forecast per state
    double national_forecast = 0.0;             // next-step national forecast
    std::vector<double> last_observed_states;   // y_t per state
    std::vector<double> last_fitted_states;     // in-sample fit at t per state
    double last_observed_national = 0.0;
    double last_fitted_national = 0.0;

    // Per-state in-sample residual histories (oldest first); only consulted
    // by the window and ewma weight modes.
    std::vector<std::vector<double>> state_residual_history;

    /// Throws DomainError on length mismatches, empty input or non-finite values.
    void validate() const;
};

enum class AdjustBranch { distribute_to_states, national_follows_states };

std::string to_string(AdjustBranch branch);

struct AdjustmentResult {
    std::vector<double> corrected_state_forecasts;
    double corrected_national_forecast = 0.0;
    std::vector<double> weights;
    double discrepancy = 0.0;
    AdjustBranch branch = AdjustBranch::distribute_to_states;
    double national_error = 0.0;  // |Y_t - fitted national|
    double states_error = 0.0;    // |sum_i (y_t^(i) - fitted_i)|
};

/// w_i = r_i^2 / sum_j r_j^2 with r = observed - fitted; uniform 1/n when every
/// residual is zero.
std::vector<double> compute_weights(std::span<const double> last_observed_states,
                                    std::span<const double> last_fitted_states);

/// Weights from squared residual summaries under `mode`. For Kind::last the
/// final element of each history is used.
std::vector<double> compute_weights(const std::vector<std::vector<double>>& residual_history,
                                    const WeightMode& mode);

/// d = national forecast - sum of state forecasts.
double compute_discrepancy(const AdjustmentInput& input);

/**
 * Constant-sum reconciliation of one forecast step.
 *
 * When the national model's last in-sample error is no larger than the
 * aggregate state error, d is distributed to the states by weight and the
 * national forecast is kept; otherwise the states are kept and the national
 * forecast becomes their sum. Either way the result is sum-consistent.
 */
AdjustmentResult adjust_forecasts(const AdjustmentInput& input, const WeightMode& mode = {});

}  // namespace epicast
