#include "epicast/arima.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "epicast/error.hpp"
#include "epicast/linalg.hpp"
#include "epicast/log.hpp"
#include "epicast/optimize.hpp"

namespace epicast {

std::string ArimaOrder::str() const {
    return "ARIMA(" + std::to_string(p) + "," + std::to_string(d) + "," + std::to_string(q) + ")";
}

std::vector<double> difference(std::span<const double> y, int d) {
    std::vector<double> w(y.begin(), y.end());
    for (int k = 0; k < d; ++k) {
        if (w.size() < 2) return {};
        for (std::size_t i = 0; i + 1 < w.size(); ++i) w[i] = w[i + 1] - w[i];
        w.pop_back();
    }
    return w;
}

namespace {

double sample_variance(std::span<const double> x) {
    if (x.size() < 2) return 0.0;
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
    double acc = 0.0;
    for (double v : x) acc += (v - mean) * (v - mean);
    return acc / static_cast<double>(x.size() - 1);
}

// Innovations e_t for t = p .. n-1; returns the sum of squares.
double css_residuals(std::span<const double> w, ArimaOrder order, double c,
                     std::span<const double> ar, std::span<const double> ma,
                     std::vector<double>* out) {
    const std::size_t n = w.size();
    const std::size_t p = static_cast<std::size_t>(order.p);
    const std::size_t q = static_cast<std::size_t>(order.q);
    std::vector<double> e(n, 0.0);
    double sse = 0.0;
    for (std::size_t t = p; t < n; ++t) {
        double pred = c;
        for (std::size_t i = 0; i < p; ++i) pred += ar[i] * w[t - 1 - i];
        for (std::size_t j = 0; j < q && j < t; ++j) pred += ma[j] * e[t - 1 - j];
        e[t] = w[t] - pred;
        sse += e[t] * e[t];
        if (!std::isfinite(sse)) return std::numeric_limits<double>::infinity();
    }
    if (out != nullptr) out->assign(e.begin() + static_cast<std::ptrdiff_t>(p), e.end());
    return sse;
}

struct Unpacked {
    double c;
    std::span<const double> ar;
    std::span<const double> ma;
};

Unpacked unpack(std::span<const double> params, ArimaOrder order, bool intercept) {
    const std::size_t off = intercept ? 1 : 0;
    return {intercept ? params[0] : 0.0, params.subspan(off, order.p),
            params.subspan(off + order.p, order.q)};
}

// Least-squares AR(p) (plus intercept) as a starting point; MA terms start at 0.
std::vector<double> ols_start(std::span<const double> w, ArimaOrder order, bool intercept) {
    const std::size_t p = static_cast<std::size_t>(order.p);
    const std::size_t cols = p + (intercept ? 1 : 0);
    std::vector<double> params(cols + order.q, 0.0);
    if (cols == 0) return params;
    std::vector<double> design;
    std::vector<double> target;
    for (std::size_t t = p; t < w.size(); ++t) {
        if (intercept) design.push_back(1.0);
        for (std::size_t i = 0; i < p; ++i) design.push_back(w[t - 1 - i]);
        target.push_back(w[t]);
    }
    if (auto beta = linalg::least_squares(design, target, cols)) {
        std::copy(beta->begin(), beta->end(), params.begin());
    } else if (intercept) {
        params[0] = std::accumulate(w.begin(), w.end(), 0.0) / static_cast<double>(w.size());
    }
    return params;
}

}  // namespace

int choose_differencing(std::span<const double> y) {
    int d = 0;
    double var = sample_variance(y);
    while (d < kArimaMaxD) {
        const auto next = difference(y, d + 1);
        if (next.size() < 2) break;
        const double next_var = sample_variance(next);
        if (!(next_var < var)) break;
        var = next_var;
        ++d;
    }
    return d;
}

double arima_css(std::span<const double> differenced, ArimaOrder order, bool intercept,
                 std::span<const double> params) {
    const auto u = unpack(params, order, intercept);
    return css_residuals(differenced, order, u.c, u.ar, u.ma, nullptr);
}

ArimaModel arima_fit_order(std::span<const double> y, ArimaOrder order,
                           std::optional<std::vector<double>> start) {
    if (order.p < 0 || order.p > kArimaMaxP || order.q < 0 || order.q > kArimaMaxQ ||
        order.d < 0 || order.d > kArimaMaxD) {
        throw DomainError(order.str() + ": order outside p,q <= 5, d <= 2");
    }
    ArimaModel m;
    m.order = order;
    m.observed.assign(y.begin(), y.end());
    m.differenced = difference(y, order.d);
    const bool intercept = m.has_intercept();
    const std::size_t k = static_cast<std::size_t>(order.p + order.q) + (intercept ? 1 : 0);
    const std::size_t count = m.differenced.size() > static_cast<std::size_t>(order.p)
                                  ? m.differenced.size() - static_cast<std::size_t>(order.p)
                                  : 0;
    if (count < k + 2) {
        throw InsufficientDataError(order.str() + ": too few observations (" +
                                    std::to_string(y.size()) + ")");
    }

    const std::span<const double> w = m.differenced;
    auto objective = [&](std::span<const double> params) {
        return arima_css(w, order, intercept, params);
    };

    std::vector<double> x0 = ols_start(w, order, intercept);
    if (start && start->size() == x0.size() && objective(*start) < objective(x0)) {
        x0 = *start;
    }

    std::vector<double> params = x0;
    if (k > 0) {
        optimize::NelderMeadOptions opt;
        const double scale = std::sqrt(std::max(sample_variance(w), 1e-12));
        opt.initial_step.assign(k, 0.1);
        if (intercept) opt.initial_step[0] = 0.1 * std::max(scale, std::abs(x0[0]));
        opt.max_iterations = 600 * k;
        opt.f_tol_rel = 1e-9;
        opt.x_tol = 1e-7;
        const auto res = optimize::nelder_mead(objective, x0, opt);
        if (!res.converged) {
            throw FitError(order.str() + ": CSS search did not converge after " +
                           std::to_string(res.iterations) + " iterations");
        }
        params = res.x;
    }

    const auto u = unpack(params, order, intercept);
    m.intercept = u.c;
    m.ar.assign(u.ar.begin(), u.ar.end());
    m.ma.assign(u.ma.begin(), u.ma.end());
    m.css = css_residuals(w, order, u.c, u.ar, u.ma, &m.residuals);
    if (!std::isfinite(m.css)) throw FitError(order.str() + ": non-finite CSS");
    m.sigma2 = m.css / static_cast<double>(count);
    const double log_sigma2 = std::log(std::max(m.sigma2, 1e-300));
    m.aic = static_cast<double>(count) * log_sigma2 + 2.0 * static_cast<double>(k + 1);
    return m;
}

ArimaModel arima_fit(std::span<const double> y) {
    if (y.size() < 20) {
        throw InsufficientDataError("ARIMA fit needs at least 20 observations, got " +
                                    std::to_string(y.size()));
    }
    const int d = choose_differencing(y);
    std::optional<ArimaModel> best;
    std::string last_error;
    for (int p = 0; p <= kArimaMaxP; ++p) {
        std::optional<std::vector<double>> warm;
        for (int q = 0; q <= kArimaMaxQ; ++q) {
            const ArimaOrder order{p, d, q};
            try {
                ArimaModel m = arima_fit_order(y, order, warm);
                std::vector<double> next;
                if (m.has_intercept()) next.push_back(m.intercept);
                next.insert(next.end(), m.ar.begin(), m.ar.end());
                next.insert(next.end(), m.ma.begin(), m.ma.end());
                next.push_back(0.0);
                warm = std::move(next);
                if (!best || m.aic < best->aic) best = std::move(m);
            } catch (const FitError& e) {
                last_error = e.what();
                log::debug(last_error);
            } catch (const InsufficientDataError& e) {
                last_error = e.what();
            }
        }
    }
    if (!best) throw FitError("ARIMA: no candidate order could be fitted (" + last_error + ")");
    return std::move(*best);
}

ArimaModel arima_fit(const UnivariateSeries& series) { return arima_fit(series.values()); }

std::vector<double> arima_forecast(const ArimaModel& model, std::size_t h) {
    std::vector<double> out(h);
    if (h == 0) return out;
    const std::size_t p = static_cast<std::size_t>(model.order.p);
    const std::size_t q = static_cast<std::size_t>(model.order.q);

    std::vector<double> w = model.differenced;
    std::vector<double> e = model.residuals;
    const std::size_t base = w.size();
    auto lag_w = [&](std::size_t idx) { return idx < w.size() ? w[idx] : 0.0; };
    for (std::size_t k = 0; k < h; ++k) {
        const std::size_t t = base + k;
        double pred = model.intercept;
        for (std::size_t i = 0; i < p; ++i) {
            if (t >= i + 1) pred += model.ar[i] * lag_w(t - 1 - i);
        }
        for (std::size_t j = 0; j < q; ++j) {
            // Innovations beyond the sample are zero.
            const std::size_t lag = j + 1;
            if (lag > k && e.size() >= lag - k) pred += model.ma[j] * e[e.size() - (lag - k)];
        }
        w.push_back(pred);
    }

    // Integrate back through each differencing level.
    std::vector<double> fc(w.begin() + static_cast<std::ptrdiff_t>(base), w.end());
    for (int level = model.order.d - 1; level >= 0; --level) {
        const auto below = difference(model.observed, level);
        double last = below.back();
        for (double& v : fc) {
            last += v;
            v = last;
        }
    }
    return fc;
}

ArimaForecaster::ArimaForecaster(std::span<const double> y) : ArimaForecaster(arima_fit(y)) {}

ArimaForecaster::ArimaForecaster(std::span<const double> y, ArimaOrder order)
    : ArimaForecaster(arima_fit_order(y, order)) {
    fixed_order_ = true;
}

ArimaForecaster::ArimaForecaster(ArimaModel model) : model_(std::move(model)) {
    fitted_.offset = static_cast<std::size_t>(model_.order.d + model_.order.p);
    fitted_.values.resize(model_.residuals.size());
    for (std::size_t i = 0; i < fitted_.values.size(); ++i) {
        fitted_.values[i] = model_.observed[fitted_.offset + i] - model_.residuals[i];
    }
}

std::string ArimaForecaster::tag() const {
    if (!fixed_order_) return "arima";
    return "arima(" + std::to_string(model_.order.p) + "," + std::to_string(model_.order.d) +
           "," + std::to_string(model_.order.q) + ")";
}

}  // namespace epicast
