#include "epicast/hybrid.hpp"

#include <charconv>
#include <optional>

#include "epicast/arima.hpp"
#include "epicast/error.hpp"
#include "epicast/holt.hpp"

namespace epicast {

namespace {

std::optional<ArimaOrder> parse_arima_order(std::string_view tag) {
    constexpr std::string_view prefix = "arima(";
    if (!tag.starts_with(prefix) || !tag.ends_with(")")) return std::nullopt;
    std::string_view body = tag.substr(prefix.size(), tag.size() - prefix.size() - 1);
    int parts[3];
    for (int i = 0; i < 3; ++i) {
        const auto comma = body.find(',');
        const std::string_view field = i < 2 ? body.substr(0, comma) : body;
        if ((i < 2 && comma == std::string_view::npos) || field.empty()) return std::nullopt;
        auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), parts[i]);
        if (ec != std::errc{} || ptr != field.data() + field.size()) return std::nullopt;
        if (i < 2) body.remove_prefix(comma + 1);
    }
    ArimaOrder order{parts[0], parts[1], parts[2]};
    if (order.p < 0 || order.p > kArimaMaxP || order.q < 0 || order.q > kArimaMaxQ ||
        order.d < 0 || order.d > kArimaMaxD) {
        return std::nullopt;
    }
    return order;
}

[[noreturn]] void rethrow_with_phase(const std::string& phase) {
    try {
        throw;
    } catch (const InsufficientDataError& e) {
        throw InsufficientDataError(phase + ": " + e.what());
    } catch (const TrainingError& e) {
        throw FitError(phase + ": " + e.what());
    } catch (const Error& e) {
        throw FitError(phase + ": " + e.what());
    }
}

}  // namespace

HybridModel::HybridModel(std::span<const double> y, BaseKind base_kind, const TdnnConfig& config)
    : base_kind_(base_kind) {
    if (y.size() < 20) {
        throw InsufficientDataError("hybrid model needs at least 20 observations, got " +
                                    std::to_string(y.size()));
    }
    const std::string base_name = base_kind == BaseKind::holt ? "holt" : "arima";
    try {
        if (base_kind == BaseKind::holt) {
            base_ = std::make_unique<HoltModel>(y);
        } else {
            base_ = std::make_unique<ArimaForecaster>(y);
        }
    } catch (const Error&) {
        rethrow_with_phase("phase I (" + base_name + ")");
    }
    fit_residuals(config);
}

HybridModel::HybridModel(std::shared_ptr<const FittedModel> base, BaseKind base_kind,
                         const TdnnConfig& config)
    : base_kind_(base_kind), base_(std::move(base)) {
    if (!base_) throw DomainError("hybrid model: no base model given");
    if (base_->observed().size() < 20) {
        throw InsufficientDataError("hybrid model needs at least 20 observations, got " +
                                    std::to_string(base_->observed().size()));
    }
    fit_residuals(config);
}

void HybridModel::fit_residuals(const TdnnConfig& config) {
    const std::string base_name = base_kind_ == BaseKind::holt ? "holt" : "arima";
    // Positions without a base fitted value are excluded, not imputed.
    base_residuals_ = base_->residuals();
    try {
        residual_model_ = wbann_fit(base_residuals_, config);
    } catch (const Error&) {
        rethrow_with_phase("phase II (wbann on " + base_name + " residuals)");
    }

    const FittedValues& bf = base_->fitted();
    const FittedValues rf = residual_fitted();
    fitted_.offset = rf.offset;
    fitted_.values.resize(rf.values.size());
    for (std::size_t i = 0; i < rf.values.size(); ++i) {
        fitted_.values[i] = bf.values[rf.offset - bf.offset + i] + rf.values[i];
    }
}

std::string HybridModel::tag() const {
    return base_kind_ == BaseKind::holt ? "holt-wbann" : "arima-wbf";
}

FittedValues HybridModel::residual_fitted() const {
    return {base_->fitted().offset + residual_model_.fitted.offset, residual_model_.fitted.values};
}

std::vector<double> HybridModel::forecast(std::size_t h) const {
    std::vector<double> out = base_->forecast(h);
    const auto correction = wbann_forecast(residual_model_, h);
    for (std::size_t i = 0; i < h; ++i) out[i] += correction[i];
    return out;
}

HybridModel hybrid_fit(const UnivariateSeries& series, BaseKind base_kind, const TdnnConfig& config) {
    return HybridModel(series.values(), base_kind, config);
}

bool is_known_model(std::string_view tag) {
    return tag == "holt" || tag == "arima" || tag == "holt-wbann" || tag == "arima-wbf" ||
           parse_arima_order(tag).has_value();
}

std::unique_ptr<FittedModel> fit_model(std::string_view tag, std::span<const double> y,
                                       const TdnnConfig& config) {
    if (tag == "holt") return std::make_unique<HoltModel>(y);
    if (tag == "arima") return std::make_unique<ArimaForecaster>(y);
    if (tag == "holt-wbann") return std::make_unique<HybridModel>(y, BaseKind::holt, config);
    if (tag == "arima-wbf") return std::make_unique<HybridModel>(y, BaseKind::arima, config);
    if (auto order = parse_arima_order(tag)) return std::make_unique<ArimaForecaster>(y, *order);
    throw DomainError("unknown model '" + std::string(tag) +
                      "'; expected holt, arima, arima(p,d,q), holt-wbann or arima-wbf");
}

}  // namespace epicast
