#include "epicast/wavelet.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "epicast/error.hpp"

namespace epicast {

namespace {

// One inverse pyramid stage at shift s: rebuilds V_{j-1} from W_j and V_j.
std::vector<double> inverse_stage(std::span<const double> w, std::span<const double> v, std::size_t s) {
    const std::size_t n = v.size();
    std::vector<double> out(n);
    for (std::size_t t = 0; t < n; ++t) {
        const std::size_t ahead = (t + s) % n;
        out[t] = 0.5 * (w[t] - w[ahead]) + 0.5 * (v[t] + v[ahead]);
    }
    return out;
}

// Runs stages `from`..1, with wavelet input only at level `from` (if given).
std::vector<double> synthesize(const std::vector<double>* w_top, const std::vector<double>* v_top,
                               std::size_t from, std::size_t n) {
    const std::vector<double> zeros(n, 0.0);
    std::vector<double> v = v_top ? *v_top : zeros;
    for (std::size_t j = from; j >= 1; --j) {
        const auto& w = (j == from && w_top) ? *w_top : zeros;
        v = inverse_stage(w, v, std::size_t{1} << (j - 1));
    }
    return v;
}

}  // namespace

std::vector<std::vector<double>> WaveletMra::components() const {
    std::vector<std::vector<double>> out = details;
    out.push_back(smooth);
    return out;
}

std::size_t max_levels(std::size_t n) {
    std::size_t j = 0;
    while ((std::size_t{2} << j) <= n) ++j;
    return j;
}

std::size_t choose_levels(std::size_t n) {
    if (n < 8) {
        throw InsufficientDataError("wavelet decomposition needs at least 8 observations, got " +
                                    std::to_string(n));
    }
    const auto by_ln = static_cast<std::size_t>(std::floor(std::log(static_cast<double>(n))));
    return std::clamp<std::size_t>(by_ln, 1, max_levels(n));
}

ModwtCoefficients modwt_haar_coefficients(std::span<const double> x, std::size_t levels) {
    const std::size_t n = x.size();
    if (levels == 0) throw DomainError("MODWT needs at least one level");
    if (levels > max_levels(n)) {
        throw DomainError("MODWT depth " + std::to_string(levels) + " too deep for length " +
                          std::to_string(n) + "; maximum permissible depth is " +
                          std::to_string(max_levels(n)));
    }
    ModwtCoefficients c;
    c.wavelet.reserve(levels);
    std::vector<double> v(x.begin(), x.end());
    for (std::size_t j = 1; j <= levels; ++j) {
        const std::size_t s = std::size_t{1} << (j - 1);
        std::vector<double> w(n), next(n);
        for (std::size_t t = 0; t < n; ++t) {
            const std::size_t back = (t + n - s % n) % n;
            w[t] = 0.5 * (v[t] - v[back]);
            next[t] = 0.5 * (v[t] + v[back]);
        }
        c.wavelet.push_back(std::move(w));
        v = std::move(next);
    }
    c.scaling = std::move(v);
    return c;
}

WaveletMra modwt_haar(std::span<const double> x, std::size_t levels) {
    WaveletMra mra;
    mra.levels = levels;
    mra.coefficients = modwt_haar_coefficients(x, levels);
    const std::size_t n = x.size();
    mra.details.reserve(levels);
    for (std::size_t j = 1; j <= levels; ++j) {
        mra.details.push_back(synthesize(&mra.coefficients.wavelet[j - 1], nullptr, j, n));
    }
    mra.smooth = synthesize(nullptr, &mra.coefficients.scaling, levels, n);
    return mra;
}

std::vector<double> imodwt_haar(const ModwtCoefficients& c) {
    const std::size_t levels = c.levels();
    if (levels == 0) throw ValidationError("inverse MODWT: no wavelet levels");
    const std::size_t n = c.scaling.size();
    for (const auto& w : c.wavelet) {
        if (w.size() != n) throw ValidationError("inverse MODWT: mismatched coefficient lengths");
    }
    std::vector<double> v = c.scaling;
    for (std::size_t j = levels; j >= 1; --j) {
        v = inverse_stage(c.wavelet[j - 1], v, std::size_t{1} << (j - 1));
    }
    return v;
}

std::vector<double> imodwt_haar(const WaveletMra& mra) {
    const std::size_t n = mra.smooth.size();
    if (mra.details.size() != mra.levels || mra.coefficients.levels() != mra.levels) {
        throw ValidationError("inverse MODWT: component count does not match levels");
    }
    for (const auto& d : mra.details) {
        if (d.size() != n) throw ValidationError("inverse MODWT: mismatched component lengths");
    }
    if (mra.coefficients.scaling.size() != n) {
        throw ValidationError("inverse MODWT: coefficient length differs from components");
    }
    return imodwt_haar(mra.coefficients);
}

std::vector<double> mra_sum(const WaveletMra& mra) {
    std::vector<double> out = mra.smooth;
    for (const auto& d : mra.details) {
        if (d.size() != out.size()) throw ValidationError("MRA: mismatched component lengths");
        for (std::size_t t = 0; t < out.size(); ++t) out[t] += d[t];
    }
    return out;
}

}  // namespace epicast
