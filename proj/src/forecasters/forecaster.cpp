#include "epicast/forecaster.hpp"

namespace epicast {

std::vector<double> residuals_of(std::span<const double> observed, const FittedValues& fitted) {
    std::vector<double> out(fitted.values.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = observed[fitted.offset + i] - fitted.values[i];
    }
    return out;
}

}  // namespace epicast
