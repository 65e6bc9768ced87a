#pragma once

#include <optional>
#include <span>
#include <vector>

namespace epicast::linalg {

/// Solves A x = b for a dense square row-major A by Gaussian elimination with
/// partial pivoting. Returns nullopt when A is numerically singular.
std::optional<std::vector<double>> solve(std::vector<double> a, std::vector<double> b, std::size_t n);

/// Ordinary least squares via the normal equations. `design` is row-major
/// with `cols` columns.
std::optional<std::vector<double>> least_squares(std::span<const double> design,
                                                 std::span<const double> target, std::size_t cols);

struct LineFit {
    double intercept = 0.0;
    double slope = 0.0;
    double slope_stderr = 0.0;
    double sse = 0.0;
};

/// Simple regression of y on x with the usual slope standard error
/// (residual variance on n - 2 degrees of freedom). Needs n >= 3.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace epicast::linalg
