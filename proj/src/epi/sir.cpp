#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "epicast/epi.hpp"
#include "epicast/error.hpp"
#include "epicast/optimize.hpp"

namespace epicast {

namespace {

using State = std::array<double, 3>;

State derivative(const State& y, double beta, double gamma) {
    const double infection = beta * y[0] * y[1];
    const double recovery = gamma * y[1];
    return {-infection, infection - recovery, recovery};
}

State rk4_step(const State& y, double beta, double gamma, double h) {
    auto shifted = [&](const State& k, double f) {
        return State{y[0] + f * k[0], y[1] + f * k[1], y[2] + f * k[2]};
    };
    const State k1 = derivative(y, beta, gamma);
    const State k2 = derivative(shifted(k1, h / 2), beta, gamma);
    const State k3 = derivative(shifted(k2, h / 2), beta, gamma);
    const State k4 = derivative(shifted(k3, h), beta, gamma);
    State out;
    for (std::size_t c = 0; c < 3; ++c) {
        out[c] = y[c] + h / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
    }
    return out;
}

// Susceptible fraction per day, without allocating the full trajectory.
void simulate_s(double beta, double gamma, double i0, std::size_t days, double step,
                std::vector<double>& s_out) {
    s_out.resize(days);
    State y{1.0 - i0, i0, 0.0};
    const auto sub = static_cast<std::size_t>(std::llround(1.0 / step));
    const double h = 1.0 / static_cast<double>(sub);
    for (std::size_t d = 0; d < days; ++d) {
        if (d > 0) {
            for (std::size_t k = 0; k < sub; ++k) y = rk4_step(y, beta, gamma, h);
        }
        s_out[d] = y[0];
    }
}

}  // namespace

SirTrajectory sir_simulate(double beta, double gamma, double s0, double i0, std::size_t days,
                           double step) {
    if (beta < 0.0 || gamma < 0.0 || s0 < 0.0 || i0 < 0.0) {
        throw DomainError("SIR parameters must be non-negative");
    }
    if (!(step > 0.0) || step > 0.5) throw DomainError("SIR step must lie in (0, 0.5] days");
    const auto sub = static_cast<std::size_t>(std::llround(1.0 / step));
    if (sub == 0) throw DomainError("SIR step too large");
    const double h = 1.0 / static_cast<double>(sub);

    SirTrajectory traj;
    traj.s.reserve(days);
    traj.i.reserve(days);
    traj.r.reserve(days);
    State y{s0, i0, 1.0 - s0 - i0 > 0.0 ? 1.0 - s0 - i0 : 0.0};
    for (std::size_t d = 0; d < days; ++d) {
        if (d > 0) {
            for (std::size_t k = 0; k < sub; ++k) y = rk4_step(y, beta, gamma, h);
        }
        traj.s.push_back(y[0]);
        traj.i.push_back(y[1]);
        traj.r.push_back(y[2]);
    }
    return traj;
}

SirFit sir_fit(const UnivariateSeries& series, double population) {
    if (!(population > 0.0)) throw DomainError("SIR fit: population must be positive");
    const std::size_t days = series.size();
    if (days < 5) throw InsufficientDataError("SIR fit needs at least 5 days of data");

    std::vector<double> observed(days);
    double cumulative = 0.0;
    for (std::size_t d = 0; d < days; ++d) {
        cumulative += series[d];
        observed[d] = cumulative / population;
    }
    if (!(cumulative > 0.0)) {
        throw DomainError("SIR fit: series '" + series.name() + "' has no incidence (no epidemic signal)");
    }
    if (cumulative >= population) {
        throw DomainError("SIR fit: cumulative cases exceed the population");
    }

    // Objective normalised by the final attack fraction so its scale is O(1).
    const double scale = observed.back() * observed.back();
    constexpr double step = 0.1;
    std::vector<double> s;
    auto sse = [&](double beta, double gamma, double i0) {
        simulate_s(beta, gamma, i0, days, step, s);
        double acc = 0.0;
        for (std::size_t d = 0; d < days; ++d) {
            const double e = (1.0 - s[d]) - observed[d];
            acc += e * e;
        }
        return acc;
    };
    auto objective = [&](std::span<const double> x) {
        return sse(x[0], x[1], std::pow(10.0, x[2])) / scale;
    };

    optimize::NelderMeadOptions opt;
    opt.lower = {1e-3, 1e-3, -12.0};
    opt.upper = {3.0, 1.0, -1.0};
    opt.initial_step = {0.05, 0.03, 0.5};
    opt.max_iterations = 4000;
    opt.f_tol_rel = 1e-10;
    opt.f_tol_abs = 1e-14;
    opt.x_tol = 1e-8;
    opt.restarts = 2;

    const double log_i0 = std::clamp(std::log10(std::max(observed.front(), 1e-12)), -12.0, -1.0);
    const std::array<std::array<double, 2>, 5> starts{{
        {0.3, 0.2}, {0.25, 0.1}, {0.5, 0.3}, {0.15, 0.1}, {1.0, 0.5},
    }};
    optimize::MinimizeResult best;
    best.value = std::numeric_limits<double>::infinity();
    for (const auto& st : starts) {
        auto res = optimize::nelder_mead(objective, {st[0], st[1], log_i0}, opt);
        if (res.value < best.value) best = std::move(res);
    }

    SirFit fit;
    fit.beta = best.x[0];
    fit.gamma = best.x[1];
    fit.i0 = std::pow(10.0, best.x[2]);
    fit.s0 = 1.0 - fit.i0;
    fit.trajectory_mse = sse(fit.beta, fit.gamma, fit.i0) / static_cast<double>(days);
    if (!best.converged || !std::isfinite(best.value)) {
        throw FitError("SIR fit did not converge; best so far beta=" + std::to_string(fit.beta) +
                       " gamma=" + std::to_string(fit.gamma) + " i0=" + std::to_string(fit.i0));
    }
    return fit;
}

}  // namespace epicast
