#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "epicast/series.hpp"
#include "epicast/tdnn.hpp"

namespace epicast {

inline constexpr std::size_t kDefaultMonitorWindow = 4;

struct MonitorOptions {
    std::size_t window = kDefaultMonitorWindow;  // k
    TdnnConfig tdnn;                             // tdnn.seed is the base seed
    double recency_lambda = 0.9;
};

struct WindowMetricRecord {
    std::size_t origin = 0;  // T, 1-based index of the first scored observation
    std::string model;
    double rmse = 0.0;
    double mae = 0.0;
    double m = 0.0;
};

struct MonitorReport {
    std::size_t window = 0;
    std::vector<std::string> models;
    std::vector<std::size_t> origins;        // T = [t/2]+1 .. t-k+1
    std::vector<WindowMetricRecord> records;  // origin-major, model order within an origin
    std::vector<std::size_t> psi;             // winning model index per origin
    std::vector<double> dominance;            // percent of origins won, per model
    std::vector<double> recency_score;        // sum of lambda^(T_max - T) over wins, per model
    std::size_t mode_winner = 0;
    std::size_t recency_winner = 0;
};

/// Number of rolling origins for a series of length t and window k:
/// (t - k + 1) - [t/2].
std::size_t origin_count(std::size_t t, std::size_t k);

/**
 * Rolling-origin out-of-sample monitoring. At every origin T each model is
 * refitted on observations 1..T-1 (fresh seed tdnn.seed + T), forecasts k
 * steps, and is scored on T..T+k-1 with m = (RMSE + MAE)/2. The per-origin
 * winner minimises m; ties go to the model listed first.
 */
MonitorReport monitor(const UnivariateSeries& series, const std::vector<std::string>& models,
                      const MonitorOptions& options = {});

}  // namespace epicast
