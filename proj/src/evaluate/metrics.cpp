#include "epicast/metrics.hpp"

#include <cmath>
#include <string>

#include "epicast/error.hpp"

namespace epicast {

namespace {

void check(std::span<const double> a, std::span<const double> b, const char* what) {
    if (a.empty() || a.size() != b.size()) {
        throw DomainError(std::string(what) + ": inputs must be non-empty and of equal length (" +
                          std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
    }
}

}  // namespace

double rmse(std::span<const double> actual, std::span<const double> predicted) {
    check(actual, predicted, "rmse");
    double acc = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        const double e = actual[i] - predicted[i];
        acc += e * e;
    }
    return std::sqrt(acc / static_cast<double>(actual.size()));
}

double mae(std::span<const double> actual, std::span<const double> predicted) {
    check(actual, predicted, "mae");
    double acc = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) acc += std::abs(actual[i] - predicted[i]);
    return acc / static_cast<double>(actual.size());
}

double m_metric(double rmse_value, double mae_value) { return (rmse_value + mae_value) / 2.0; }

double ape(double actual, double predicted) {
    if (actual == 0.0) throw DomainError("APE undefined for a zero actual value");
    return std::abs(actual - predicted) / std::abs(actual) * 100.0;
}

}  // namespace epicast
