#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "epicast/series.hpp"

namespace epicast {

/// Gamma-distributed generation interval with mean mu (days) and shape kappa.
struct GenerationInterval {
    double mu = 5.0;
    double kappa = 2.0;
};

/// Half-open index window [first, first + length).
struct IndexWindow {
    std::size_t first = 0;
    std::size_t length = 30;
};

struct GrowthFit {
    double r = 0.0;       // per day
    double stderr_r = 0.0;
    double mse = 0.0;     // residual variance of ln(incidence) on n - 2 degrees of freedom
    IndexWindow window;
};

struct R0Estimate {
    double growth_rate = 0.0;
    double growth_stderr = 0.0;
    double r0 = 1.0;
    double ci_lower = 1.0;
    double ci_upper = 1.0;
    double fit_mse = 0.0;
};

/// First run of `length` consecutive strictly positive observations.
/// Throws DomainError when the series has no such run.
IndexWindow default_growth_window(const UnivariateSeries& series, std::size_t length = 30);

/// OLS of ln(incidence) on t over the window. Every value in the window must
/// be positive; the error names the offending date.
GrowthFit fit_growth_rate(const UnivariateSeries& series, IndexWindow window);

/// R0 = (1 + r mu / kappa)^kappa, the reciprocal of the gamma moment
/// generating function at -r. The 95% interval evaluates the same map at
/// r -/+ 1.96 stderr.
R0Estimate r0_from_growth(double r, const GenerationInterval& gi, double stderr_r = 0.0,
                          double fit_mse = 0.0);

struct SirTrajectory {
    std::vector<double> s;
    std::vector<double> i;
    std::vector<double> r;  // one sample per day, day 0 first
};

/// Classical SIR in population fractions, integrated with fixed-step RK4.
/// `step` must be in (0, 0.5].
SirTrajectory sir_simulate(double beta, double gamma, double s0, double i0, std::size_t days,
                           double step = 0.1);

struct SirFit {
    double beta = 0.0;
    double gamma = 0.0;
    double s0 = 1.0;
    double i0 = 0.0;
    double trajectory_mse = 0.0;  // mean squared error of cumulative incidence fractions
    double r0() const { return beta / gamma; }
};

/**
 * Least-squares SIR fit to the cumulative incidence fraction (running sum of
 * daily counts divided by `population`) against 1 - S(t), over (beta, gamma,
 * i0) with s0 = 1 - i0. Uses bounded Nelder-Mead from a few starts.
 */
SirFit sir_fit(const UnivariateSeries& series, double population);

}  // namespace epicast
