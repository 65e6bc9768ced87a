#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace epicast {

/// MODWT coefficients: wavelet[j-1] holds W_j, scaling holds V_J.
struct ModwtCoefficients {
    std::vector<std::vector<double>> wavelet;
    std::vector<double> scaling;

    std::size_t levels() const noexcept { return wavelet.size(); }
};

/**
 * Additive multiresolution analysis of a series: details D_1..D_J plus the
 * smooth S_J, each as long as the input, with sum_j D_j + S_J == x.
 * The coefficients the components were synthesised from are kept alongside.
 */
struct WaveletMra {
    std::size_t levels = 0;
    std::vector<std::vector<double>> details;
    std::vector<double> smooth;
    ModwtCoefficients coefficients;

    /// Components in model order: D_1, ..., D_J, S_J.
    std::vector<std::vector<double>> components() const;
};

/// floor(ln n) clamped to [1, floor(log2 n)]. Needs n >= 8.
std::size_t choose_levels(std::size_t n);

/// Largest admissible depth for a series of length n: floor(log2 n).
std::size_t max_levels(std::size_t n);

/// Haar MODWT (filters (1/2, 1/2) and (1/2, -1/2)) with periodic boundary,
/// returning coefficients and the additive MRA.
WaveletMra modwt_haar(std::span<const double> x, std::size_t levels);

/// Coefficients only.
ModwtCoefficients modwt_haar_coefficients(std::span<const double> x, std::size_t levels);

/// Inverse pyramid; exact inverse of modwt_haar_coefficients.
std::vector<double> imodwt_haar(const ModwtCoefficients& coefficients);

/// Inverse from an MRA: runs the inverse pyramid on its coefficients.
std::vector<double> imodwt_haar(const WaveletMra& mra);

/// sum_j D_j + S_J.
std::vector<double> mra_sum(const WaveletMra& mra);

}  // namespace epicast
