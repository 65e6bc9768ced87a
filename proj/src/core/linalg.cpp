#include "epicast/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "epicast/error.hpp"

namespace epicast::linalg {

std::optional<std::vector<double>> solve(std::vector<double> a, std::vector<double> b, std::size_t n) {
    double scale = 0.0;
    for (double v : a) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) return std::nullopt;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a[r * n + col]) > std::abs(a[pivot * n + col])) pivot = r;
        }
        if (std::abs(a[pivot * n + col]) <= 1e-13 * scale) return std::nullopt;
        if (pivot != col) {
            for (std::size_t k = 0; k < n; ++k) std::swap(a[col * n + k], a[pivot * n + k]);
            std::swap(b[col], b[pivot]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            const double factor = a[r * n + col] / a[col * n + col];
            if (factor == 0.0) continue;
            for (std::size_t k = col; k < n; ++k) a[r * n + k] -= factor * a[col * n + k];
            b[r] -= factor * b[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double acc = b[i];
        for (std::size_t k = i + 1; k < n; ++k) acc -= a[i * n + k] * x[k];
        x[i] = acc / a[i * n + i];
    }
    return x;
}

std::optional<std::vector<double>> least_squares(std::span<const double> design,
                                                 std::span<const double> target, std::size_t cols) {
    const std::size_t rows = target.size();
    std::vector<double> xtx(cols * cols, 0.0);
    std::vector<double> xty(cols, 0.0);
    for (std::size_t r = 0; r < rows; ++r) {
        const double* row = design.data() + r * cols;
        for (std::size_t i = 0; i < cols; ++i) {
            xty[i] += row[i] * target[r];
            for (std::size_t j = 0; j < cols; ++j) xtx[i * cols + j] += row[i] * row[j];
        }
    }
    return solve(std::move(xtx), std::move(xty), cols);
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    if (n != y.size()) throw DomainError("fit_line: x and y lengths differ");
    if (n < 3) throw InsufficientDataError("line fit needs at least 3 points");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw DomainError("fit_line: x has zero variance");
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - fit.intercept - fit.slope * x[i];
        fit.sse += r * r;
    }
    fit.slope_stderr = std::sqrt(fit.sse / static_cast<double>(n - 2) / sxx);
    return fit;
}

}  // namespace epicast::linalg
