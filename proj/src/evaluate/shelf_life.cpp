#include "epicast/shelf_life.hpp"

#include <cmath>
#include <limits>

#include "epicast/error.hpp"
#include "epicast/hybrid.hpp"
#include "epicast/linalg.hpp"
#include "epicast/metrics.hpp"

namespace epicast {

ShelfLifeResult shelf_life_from_ape(std::vector<ApePoint> points, std::size_t train_len,
                                    double threshold_pct) {
    if (points.size() < 3) {
        throw InsufficientDataError("shelf life regression needs at least 3 APE points, got " +
                                    std::to_string(points.size()));
    }
    std::vector<double> ts, apes;
    ts.reserve(points.size());
    apes.reserve(points.size());
    for (const auto& p : points) {
        ts.push_back(p.t);
        apes.push_back(p.ape);
    }
    const auto line = linalg::fit_line(ts, apes);

    ShelfLifeResult res;
    res.slope = line.slope;
    res.intercept = line.intercept;
    res.threshold_pct = threshold_pct;
    res.train_len = train_len;
    res.ape_series = std::move(points);
    if (res.slope <= 0.0) {
        res.unbounded = true;
        res.crossing_t = std::numeric_limits<double>::quiet_NaN();
        res.shelf_days = std::numeric_limits<double>::infinity();
    } else {
        res.crossing_t = (threshold_pct - res.intercept) / res.slope;
        res.shelf_days = res.crossing_t - static_cast<double>(train_len);
    }
    return res;
}

ShelfLifeResult shelf_life(const UnivariateSeries& series, std::size_t train_len,
                           const std::string& model, double threshold_pct, const TdnnConfig& config) {
    const std::size_t total = series.size();
    if (train_len == 0 || train_len >= total) {
        throw DomainError("shelf life: training length " + std::to_string(train_len) +
                          " must be in [1, " + std::to_string(total - 1) + "]");
    }
    for (std::size_t i = train_len; i < total; ++i) {
        if (series[i] == 0.0) {
            throw DomainError("shelf life: zero actual on " + format_date(series.date(i)) +
                              " makes APE undefined");
        }
    }
    const auto fitted = fit_model(model, series.values().first(train_len), config);
    const auto fc = fitted->forecast(total - train_len);
    std::vector<ApePoint> points;
    points.reserve(fc.size());
    for (std::size_t i = 0; i < fc.size(); ++i) {
        const std::size_t idx = train_len + i;
        points.push_back({static_cast<double>(idx + 1), ape(series[idx], fc[i])});
    }
    return shelf_life_from_ape(std::move(points), train_len, threshold_pct);
}

}  // namespace epicast
