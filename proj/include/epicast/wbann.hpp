#pragma once

#include <span>
#include <vector>

#include "epicast/forecaster.hpp"
#include "epicast/tdnn.hpp"
#include "epicast/wavelet.hpp"

namespace epicast {

/**
 * Wavelet-based ANN: the input is split into its Haar MODWT multiresolution
 * components, one TDNN is trained per component, and component outputs are
 * summed. Component c is trained with seed config.seed + c.
 */
struct WbannModel {
    std::size_t levels = 0;
    std::vector<TdnnModel> components;        // D_1..D_J, S_J
    std::vector<std::vector<double>> tails;   // last `lags` values of each component
    FittedValues fitted;                      // sum of component fitted values
};

WbannModel wbann_fit(std::span<const double> series, const TdnnConfig& config);

std::vector<double> wbann_forecast(const WbannModel& model, std::size_t h);

/// Forecast of a single component (index into model.components).
std::vector<double> wbann_component_forecast(const WbannModel& model, std::size_t component,
                                             std::size_t h);

}  // namespace epicast
