#include "epicast/tdnn.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "epicast/error.hpp"

namespace epicast {

namespace {

inline double logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// Uniform draw in [-0.5, 0.5) from the top 53 bits, independent of the
// standard library's distribution implementation.
inline double uniform_centered(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53 - 0.5;
}

}  // namespace

void validate(const TdnnConfig& c) {
    if (c.lags < 1 || c.hidden < 1 || c.repeats < 1 || c.epochs < 1) {
        throw DomainError("TDNN config: lags, hidden, repeats and epochs must all be >= 1");
    }
    if (!(c.learning_rate > 0.0) || !std::isfinite(c.learning_rate)) {
        throw DomainError("TDNN config: learning rate must be positive");
    }
}

LagMatrix make_lag_matrix(std::span<const double> series, std::size_t lags) {
    if (lags == 0) throw DomainError("lag matrix needs at least one lag");
    if (series.size() <= lags) {
        throw InsufficientDataError("lag matrix needs more than " + std::to_string(lags) +
                                    " observations, got " + std::to_string(series.size()));
    }
    LagMatrix m;
    m.rows = series.size() - lags;
    m.cols = lags;
    m.inputs.resize(m.rows * m.cols);
    m.targets.resize(m.rows);
    for (std::size_t i = 0; i < m.rows; ++i) {
        std::copy_n(series.begin() + static_cast<std::ptrdiff_t>(i), lags,
                    m.inputs.begin() + static_cast<std::ptrdiff_t>(i * lags));
        m.targets[i] = series[i + lags];
    }
    return m;
}

double TdnnWeights::predict(std::span<const double> window) const {
    const double* w1 = params.data();
    const double* b1 = w1 + hidden * lags;
    const double* w2 = b1 + hidden;
    double out = w2[hidden];
    for (std::size_t k = 0; k < hidden; ++k) {
        double z = b1[k];
        for (std::size_t l = 0; l < lags; ++l) z += w1[k * lags + l] * window[l];
        out += w2[k] * logistic(z);
    }
    return out;
}

double tdnn_loss(const TdnnWeights& net, const LagMatrix& data) {
    double acc = 0.0;
    for (std::size_t i = 0; i < data.rows; ++i) {
        const double r = net.predict(data.row(i)) - data.targets[i];
        acc += r * r;
    }
    return acc / (2.0 * static_cast<double>(data.rows));
}

namespace {

// Column-major copy of a lag matrix plus scratch buffers, so the inner loops
// over rows are contiguous. Reductions use four partial sums.
struct GradientKernel {
    std::size_t n = 0, P = 0, H = 0;
    std::vector<double> x;        // P columns of n
    std::vector<double> y;
    std::vector<double> act;      // H columns of n
    std::vector<double> residual;

    GradientKernel(const LagMatrix& data, std::size_t hidden)
        : n(data.rows), P(data.cols), H(hidden), x(data.rows * data.cols), y(data.targets),
          act(hidden * data.rows), residual(data.rows) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t l = 0; l < P; ++l) x[l * n + i] = data.inputs[i * P + l];
        }
    }

    static double dot(const double* a, const double* b, std::size_t n) {
        double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
        std::size_t i = 0;
        for (; i + 4 <= n; i += 4) {
            s0 += a[i] * b[i];
            s1 += a[i + 1] * b[i + 1];
            s2 += a[i + 2] * b[i + 2];
            s3 += a[i + 3] * b[i + 3];
        }
        for (; i < n; ++i) s0 += a[i] * b[i];
        return (s0 + s1) + (s2 + s3);
    }

    static double sum(const double* a, std::size_t n) {
        double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
        std::size_t i = 0;
        for (; i + 4 <= n; i += 4) {
            s0 += a[i];
            s1 += a[i + 1];
            s2 += a[i + 2];
            s3 += a[i + 3];
        }
        for (; i < n; ++i) s0 += a[i];
        return (s0 + s1) + (s2 + s3);
    }

    double run(std::span<const double> params, std::span<double> grad) {
        const double* w1 = params.data();
        const double* b1 = w1 + H * P;
        const double* w2 = b1 + H;
        const double b2 = w2[H];
        double* g_w1 = grad.data();
        double* g_b1 = g_w1 + H * P;
        double* g_w2 = g_b1 + H;

        double* r = residual.data();
        for (std::size_t i = 0; i < n; ++i) r[i] = b2 - y[i];
        for (std::size_t k = 0; k < H; ++k) {
            double* a = act.data() + k * n;
            for (std::size_t i = 0; i < n; ++i) a[i] = b1[k];
            for (std::size_t l = 0; l < P; ++l) {
                const double w = w1[k * P + l];
                const double* xl = x.data() + l * n;
                for (std::size_t i = 0; i < n; ++i) a[i] += w * xl[i];
            }
            for (std::size_t i = 0; i < n; ++i) a[i] = logistic(a[i]);
            for (std::size_t i = 0; i < n; ++i) r[i] += w2[k] * a[i];
        }

        const double inv_n = 1.0 / static_cast<double>(n);
        const double loss = dot(r, r, n) * 0.5 * inv_n;
        g_w2[H] = sum(r, n) * inv_n;
        for (std::size_t k = 0; k < H; ++k) {
            double* a = act.data() + k * n;
            g_w2[k] = dot(r, a, n) * inv_n;
            // a becomes the back-propagated delta for hidden unit k
            for (std::size_t i = 0; i < n; ++i) a[i] = r[i] * w2[k] * a[i] * (1.0 - a[i]);
            g_b1[k] = sum(a, n) * inv_n;
            for (std::size_t l = 0; l < P; ++l) g_w1[k * P + l] = dot(a, x.data() + l * n, n) * inv_n;
        }
        return loss;
    }
};

}  // namespace

double tdnn_loss_and_gradient(const TdnnWeights& net, const LagMatrix& data, std::span<double> grad) {
    if (grad.size() != net.params.size()) throw DomainError("gradient buffer has the wrong size");
    GradientKernel kernel(data, net.hidden);
    return kernel.run(net.params, grad);
}

MinMaxScaling MinMaxScaling::fit(std::span<const double> x) {
    MinMaxScaling s;
    if (x.empty()) return s;
    const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
    s.min = *lo;
    s.max = *hi;
    return s;
}

double TdnnModel::predict(std::span<const double> window) const {
    std::vector<double> scaled(window.size());
    for (std::size_t l = 0; l < window.size(); ++l) scaled[l] = scaling.scale(window[l]);
    double acc = 0.0;
    for (const auto& net : nets) acc += net.predict(scaled);
    return scaling.unscale(acc / static_cast<double>(nets.size()));
}

TdnnModel tdnn_train(std::span<const double> series, const TdnnConfig& config) {
    validate(config);
    if (series.size() <= config.lags + 2) {
        throw InsufficientDataError("TDNN training needs more than " +
                                    std::to_string(config.lags + 2) + " observations, got " +
                                    std::to_string(series.size()));
    }
    TdnnModel model;
    model.config = config;
    model.scaling = MinMaxScaling::fit(series);

    std::vector<double> scaled(series.size());
    for (std::size_t t = 0; t < series.size(); ++t) scaled[t] = model.scaling.scale(series[t]);
    const LagMatrix data = make_lag_matrix(scaled, config.lags);

    const std::size_t n_params = TdnnWeights::param_count(config.lags, config.hidden);
    std::mt19937_64 gen(config.seed);
    std::vector<double> grad(n_params);
    GradientKernel kernel(data, config.hidden);
    model.nets.reserve(config.repeats);
    for (std::size_t r = 0; r < config.repeats; ++r) {
        TdnnWeights net{config.lags, config.hidden, std::vector<double>(n_params)};
        for (double& w : net.params) w = uniform_centered(gen);
        for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
            const double loss = kernel.run(net.params, grad);
            if (!std::isfinite(loss)) {
                throw TrainingError("TDNN training diverged: non-finite loss", epoch, r);
            }
            for (std::size_t k = 0; k < n_params; ++k) net.params[k] -= config.learning_rate * grad[k];
        }
        if (!std::isfinite(tdnn_loss(net, data))) {
            throw TrainingError("TDNN training diverged: non-finite loss", config.epochs, r);
        }
        model.nets.push_back(std::move(net));
    }

    model.fitted.offset = config.lags;
    model.fitted.values.resize(data.rows);
    for (std::size_t i = 0; i < data.rows; ++i) {
        model.fitted.values[i] = model.predict(series.subspan(i, config.lags));
    }
    return model;
}

std::vector<double> tdnn_forecast(const TdnnModel& model, std::span<const double> history, std::size_t h) {
    const std::size_t p = model.config.lags;
    if (history.size() != p) {
        throw DomainError("TDNN forecast needs exactly " + std::to_string(p) +
                          " history values, got " + std::to_string(history.size()));
    }
    std::vector<double> window(history.begin(), history.end());
    std::vector<double> out;
    out.reserve(h);
    for (std::size_t i = 0; i < h; ++i) {
        const double next = model.predict(window);
        out.push_back(next);
        window.erase(window.begin());
        window.push_back(next);
    }
    return out;
}

}  // namespace epicast
