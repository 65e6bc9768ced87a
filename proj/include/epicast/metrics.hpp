#pragma once

#include <span>

namespace epicast {

/// Root mean squared error. Throws DomainError on empty or unequal inputs.
double rmse(std::span<const double> actual, std::span<const double> predicted);

/// Mean absolute error. Throws DomainError on empty or unequal inputs.
double mae(std::span<const double> actual, std::span<const double> predicted);

/// (RMSE + MAE) / 2.
double m_metric(double rmse_value, double mae_value);

/// Absolute percent error 100 |y - yhat| / |y|. Throws DomainError when y == 0.
double ape(double actual, double predicted);

}  // namespace epicast
