#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "epicast/forecaster.hpp"
#include "epicast/series.hpp"

namespace epicast {

struct ArimaOrder {
    int p = 0;
    int d = 0;
    int q = 0;

    bool operator==(const ArimaOrder&) const = default;
    std::string str() const;
};

inline constexpr int kArimaMaxP = 5;
inline constexpr int kArimaMaxQ = 5;
inline constexpr int kArimaMaxD = 2;

/**
 * ARIMA(p, d, q) fitted by conditional sum of squares.
 *
 * The differenced series w follows
 *   w_t = c + sum_i ar_i w_{t-i} + sum_j ma_j e_{t-j} + e_t
 * with e conditioned to zero before the first p observations. The
 * intercept is only estimated when d == 0.
 */
struct ArimaModel {
    ArimaOrder order;
    std::vector<double> ar;
    std::vector<double> ma;
    double intercept = 0.0;
    double sigma2 = 0.0;
    double css = 0.0;
    double aic = 0.0;

    std::vector<double> observed;     // original scale
    std::vector<double> differenced;  // length observed.size() - d
    std::vector<double> residuals;    // innovations e_t for t = p .. differenced.size()-1

    bool has_intercept() const noexcept { return order.d == 0; }
};

/// Differences the series `d` times.
std::vector<double> difference(std::span<const double> y, int d);

/// Smallest d in {0,1,2} after which the next difference no longer lowers the
/// sample variance.
int choose_differencing(std::span<const double> y);

/// CSS objective for a parameter vector laid out as (intercept?, ar..., ma...).
double arima_css(std::span<const double> differenced, ArimaOrder order, bool intercept,
                 std::span<const double> params);

/// Fits a fixed order. `start` (same layout as arima_css params) seeds the
/// search in addition to the least-squares AR start. Throws FitError naming
/// the order when the simplex search does not converge.
ArimaModel arima_fit_order(std::span<const double> y, ArimaOrder order,
                           std::optional<std::vector<double>> start = std::nullopt);

/// Automatic order: d by the variance rule, then (p, q) over {0..5}^2 by AIC.
ArimaModel arima_fit(std::span<const double> y);
ArimaModel arima_fit(const UnivariateSeries& series);

/// Recursive point forecasts with future innovations set to zero,
/// integrated back through the d differences.
std::vector<double> arima_forecast(const ArimaModel& model, std::size_t h);

class ArimaForecaster final : public FittedModel {
public:
    /// Automatic order selection.
    explicit ArimaForecaster(std::span<const double> y);
    ArimaForecaster(std::span<const double> y, ArimaOrder order);
    explicit ArimaForecaster(ArimaModel model);

    std::string tag() const override;
    std::span<const double> observed() const override { return model_.observed; }
    const FittedValues& fitted() const override { return fitted_; }
    std::vector<double> forecast(std::size_t h) const override {
        return arima_forecast(model_, h);
    }

    const ArimaModel& model() const noexcept { return model_; }

private:
    ArimaModel model_;
    FittedValues fitted_;
    bool fixed_order_ = false;
};

}  // namespace epicast
