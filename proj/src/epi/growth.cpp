#include <cmath>
#include <string>

#include "epicast/epi.hpp"
#include "epicast/error.hpp"
#include "epicast/linalg.hpp"

namespace epicast {

IndexWindow default_growth_window(const UnivariateSeries& series, std::size_t length) {
    std::size_t run = 0;
    for (std::size_t i = 0; i < series.size(); ++i) {
        run = series[i] > 0.0 ? run + 1 : 0;
        if (run == length) return {i + 1 - length, length};
    }
    throw DomainError("series '" + series.name() + "' has no run of " + std::to_string(length) +
                      " consecutive days with positive incidence");
}

GrowthFit fit_growth_rate(const UnivariateSeries& series, IndexWindow window) {
    if (window.length < 5) {
        throw InsufficientDataError("growth-rate window needs at least 5 days, got " +
                                    std::to_string(window.length));
    }
    if (window.first + window.length > series.size()) {
        throw DomainError("growth-rate window exceeds the series");
    }
    std::vector<double> t(window.length), log_y(window.length);
    for (std::size_t k = 0; k < window.length; ++k) {
        const std::size_t idx = window.first + k;
        if (!(series[idx] > 0.0)) {
            throw DomainError("growth-rate window has non-positive incidence on " +
                              format_date(series.date(idx)));
        }
        t[k] = static_cast<double>(idx);
        log_y[k] = std::log(series[idx]);
    }
    const auto line = linalg::fit_line(t, log_y);
    GrowthFit fit;
    fit.r = line.slope;
    fit.stderr_r = line.slope_stderr;
    fit.mse = line.sse / static_cast<double>(window.length - 2);
    fit.window = window;
    return fit;
}

namespace {

// (1 + r mu / kappa)^kappa, or nullopt outside the domain.
std::optional<double> growth_to_r0(double r, const GenerationInterval& gi) {
    const double x = r * gi.mu / gi.kappa;
    if (!(1.0 + x > 0.0)) return std::nullopt;
    return std::exp(gi.kappa * std::log1p(x));
}

}  // namespace

R0Estimate r0_from_growth(double r, const GenerationInterval& gi, double stderr_r, double fit_mse) {
    if (!(gi.mu > 0.0) || !(gi.kappa > 0.0)) {
        throw DomainError("generation interval mean and shape must be positive");
    }
    const auto central = growth_to_r0(r, gi);
    if (!central) {
        throw DomainError("growth rate " + std::to_string(r) +
                          " decays too fast for the generation interval (1 + r mu / kappa <= 0)");
    }
    R0Estimate est;
    est.growth_rate = r;
    est.growth_stderr = stderr_r;
    est.r0 = *central;
    est.ci_lower = growth_to_r0(r - 1.96 * stderr_r, gi).value_or(0.0);
    est.ci_upper = *growth_to_r0(r + 1.96 * stderr_r, gi);
    est.fit_mse = fit_mse;
    return est;
}

}  // namespace epicast
