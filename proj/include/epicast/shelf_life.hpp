#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "epicast/series.hpp"
#include "epicast/tdnn.hpp"

namespace epicast {

struct ApePoint {
    double t = 0.0;  // 1-based observation index
    double ape = 0.0;
};

struct ShelfLifeResult {
    double slope = 0.0;
    double intercept = 0.0;
    double threshold_pct = 5.0;
    double crossing_t = 0.0;   // where intercept + slope t == threshold (NaN if unbounded)
    double shelf_days = 0.0;   // crossing_t - m (infinite if unbounded)
    bool unbounded = false;    // slope <= 0: the fitted APE line never reaches the threshold
    std::size_t train_len = 0;
    std::vector<ApePoint> ape_series;

    double fitted_line(double t) const { return intercept + slope * t; }
};

/// OLS of APE on t and the threshold crossing. Needs at least 3 points.
ShelfLifeResult shelf_life_from_ape(std::vector<ApePoint> points, std::size_t train_len,
                                    double threshold_pct = 5.0);

/**
 * Trains `model` on the first m observations, forecasts the remaining
 * T - m, and estimates how long the forecast stays under `threshold_pct`
 * APE. Throws DomainError naming the date of any zero actual.
 */
ShelfLifeResult shelf_life(const UnivariateSeries& series, std::size_t train_len,
                           const std::string& model, double threshold_pct = 5.0,
                           const TdnnConfig& config = {});

}  // namespace epicast
