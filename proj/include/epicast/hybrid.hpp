#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "epicast/forecaster.hpp"
#include "epicast/series.hpp"
#include "epicast/tdnn.hpp"
#include "epicast/wbann.hpp"

namespace epicast {

enum class BaseKind { holt, arima };

/**
 * Two-phase residual remodelling: a base forecaster is fitted to the whole
 * series, and a WBANN is trained on its in-sample residuals. Fitted values
 * and forecasts are the elementwise sums of the two phases.
 */
class HybridModel final : public FittedModel {
public:
    HybridModel(std::span<const double> y, BaseKind base_kind, const TdnnConfig& config);

    /// Phase II only, on an already fitted base model of the matching kind.
    HybridModel(std::shared_ptr<const FittedModel> base, BaseKind base_kind, const TdnnConfig& config);

    std::string tag() const override;
    std::span<const double> observed() const override { return base_->observed(); }
    const FittedValues& fitted() const override { return fitted_; }
    std::vector<double> forecast(std::size_t h) const override;

    BaseKind base_kind() const noexcept { return base_kind_; }
    const FittedModel& base() const noexcept { return *base_; }
    const WbannModel& residual_model() const noexcept { return residual_model_; }

    /// Base residuals the WBANN was trained on (aligned at base().fitted().offset).
    const std::vector<double>& base_residuals() const noexcept { return base_residuals_; }

    /// WBANN in-sample fit mapped onto observation indices.
    FittedValues residual_fitted() const;

private:
    BaseKind base_kind_;
    std::shared_ptr<const FittedModel> base_;

    void fit_residuals(const TdnnConfig& config);
    std::vector<double> base_residuals_;
    WbannModel residual_model_;
    FittedValues fitted_;
};

HybridModel hybrid_fit(const UnivariateSeries& series, BaseKind base_kind, const TdnnConfig& config);

/// Registered model tags: holt, arima, arima(p,d,q), holt-wbann, arima-wbf.
bool is_known_model(std::string_view tag);

/// Fits the model named by `tag`. Neural components draw their randomness
/// from config.seed.
std::unique_ptr<FittedModel> fit_model(std::string_view tag, std::span<const double> y,
                                       const TdnnConfig& config);

}  // namespace epicast
