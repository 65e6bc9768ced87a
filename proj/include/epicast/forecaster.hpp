#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace epicast {

/// In-sample fitted values aligned to the observed series: values[i]
/// belongs to observation index offset + i. Earlier positions have no
/// fitted value (they are not zero).
struct FittedValues {
    std::size_t offset = 0;
    std::vector<double> values;

    std::size_t end() const noexcept { return offset + values.size(); }
};

/// observed[offset + i] - fitted.values[i] for every fitted position.
std::vector<double> residuals_of(std::span<const double> observed, const FittedValues& fitted);

/**
 * Uniform contract over fitted forecasting models. Models are immutable
 * once constructed by their fit function.
 */
class FittedModel {
public:
    virtual ~FittedModel() = default;

    virtual std::string tag() const = 0;
    virtual std::span<const double> observed() const = 0;
    virtual const FittedValues& fitted() const = 0;
    virtual std::vector<double> forecast(std::size_t h) const = 0;

    std::vector<double> residuals() const { return residuals_of(observed(), fitted()); }
};

}  // namespace epicast
