#pragma once

#include <functional>
#include <span>
#include <vector>

namespace epicast::optimize {

using Objective = std::function<double(std::span<const double>)>;

struct NelderMeadOptions {
    std::vector<double> initial_step;  // per-coordinate simplex edge; empty means 10% of |x0| (or 0.1)
    std::vector<double> lower;         // empty means unbounded
    std::vector<double> upper;
    std::size_t max_iterations = 5000;
    double f_tol_rel = 1e-10;
    double f_tol_abs = 1e-14;
    double x_tol = 1e-8;
    int restarts = 1;  // re-seed the simplex around the best point this many times
};

struct MinimizeResult {
    std::vector<double> x;
    double value = 0.0;
    std::size_t iterations = 0;
    std::size_t evaluations = 0;
    bool converged = false;
};

/// Derivative-free simplex search. Candidate points are projected onto the
/// box [lower, upper] when bounds are given. Non-finite objective values
/// are treated as +infinity.
MinimizeResult nelder_mead(const Objective& f, std::vector<double> x0,
                           const NelderMeadOptions& options = {});

}  // namespace epicast::optimize
