#include "epicast/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace epicast::optimize {

namespace {

struct Problem {
    const Objective& f;
    const NelderMeadOptions& opt;
    std::size_t evaluations = 0;

    void project(std::vector<double>& x) const {
        for (std::size_t k = 0; k < x.size(); ++k) {
            if (!opt.lower.empty()) x[k] = std::max(x[k], opt.lower[k]);
            if (!opt.upper.empty()) x[k] = std::min(x[k], opt.upper[k]);
        }
    }

    double eval(std::vector<double>& x) {
        project(x);
        ++evaluations;
        const double v = f(x);
        return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
    }
};

struct Vertex {
    std::vector<double> x;
    double fx;
};

std::vector<Vertex> make_simplex(Problem& pb, const std::vector<double>& x0) {
    const std::size_t n = x0.size();
    std::vector<Vertex> simplex;
    simplex.reserve(n + 1);
    std::vector<double> start = x0;
    simplex.push_back({start, pb.eval(start)});
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<double> x = simplex.front().x;
        double step = pb.opt.initial_step.empty()
                          ? (x[k] != 0.0 ? 0.1 * std::abs(x[k]) : 0.1)
                          : pb.opt.initial_step[k];
        // Step inward when the start sits on an upper bound.
        if (!pb.opt.upper.empty() && x[k] + step > pb.opt.upper[k]) step = -step;
        x[k] += step;
        simplex.push_back({x, pb.eval(x)});
    }
    return simplex;
}

bool converged(const std::vector<Vertex>& s, const NelderMeadOptions& opt) {
    const double fb = s.front().fx;
    const double fw = s.back().fx;
    if (!std::isfinite(fw)) return false;
    if (fw - fb > opt.f_tol_abs + opt.f_tol_rel * std::abs(fb)) return false;
    for (std::size_t v = 1; v < s.size(); ++v) {
        for (std::size_t k = 0; k < s[v].x.size(); ++k) {
            if (std::abs(s[v].x[k] - s.front().x[k]) > opt.x_tol * (1.0 + std::abs(s.front().x[k]))) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace

MinimizeResult nelder_mead(const Objective& f, std::vector<double> x0,
                           const NelderMeadOptions& options) {
    Problem pb{f, options};
    const std::size_t n = x0.size();
    MinimizeResult result;
    if (n == 0) {
        result.value = pb.eval(x0);
        result.x = x0;
        result.evaluations = pb.evaluations;
        result.converged = true;
        return result;
    }

    constexpr double reflect = 1.0, expand = 2.0, contract = 0.5, shrink = 0.5;
    auto by_value = [](const Vertex& a, const Vertex& b) { return a.fx < b.fx; };

    std::vector<double> best = x0;
    bool done = false;
    std::size_t iter = 0;
    for (int round = 0; round <= options.restarts && iter < options.max_iterations; ++round) {
        auto simplex = make_simplex(pb, best);
        done = false;
        while (iter < options.max_iterations) {
            std::stable_sort(simplex.begin(), simplex.end(), by_value);
            if (converged(simplex, options)) {
                done = true;
                break;
            }
            ++iter;
            std::vector<double> centroid(n, 0.0);
            for (std::size_t v = 0; v < n; ++v) {
                for (std::size_t k = 0; k < n; ++k) centroid[k] += simplex[v].x[k];
            }
            for (auto& c : centroid) c /= static_cast<double>(n);

            auto toward = [&](double coef) {
                std::vector<double> x(n);
                for (std::size_t k = 0; k < n; ++k) {
                    x[k] = centroid[k] + coef * (simplex.back().x[k] - centroid[k]);
                }
                return x;
            };

            auto xr = toward(-reflect);
            const double fr = pb.eval(xr);
            if (fr < simplex.front().fx) {
                auto xe = toward(-expand);
                const double fe = pb.eval(xe);
                simplex.back() = fe < fr ? Vertex{std::move(xe), fe} : Vertex{std::move(xr), fr};
                continue;
            }
            if (fr < simplex[n - 1].fx) {
                simplex.back() = {std::move(xr), fr};
                continue;
            }
            const bool outside = fr < simplex.back().fx;
            auto xc = toward(outside ? -contract : contract);
            const double fc = pb.eval(xc);
            if (fc < std::min(fr, simplex.back().fx)) {
                simplex.back() = {std::move(xc), fc};
                continue;
            }
            for (std::size_t v = 1; v <= n; ++v) {
                for (std::size_t k = 0; k < n; ++k) {
                    simplex[v].x[k] = simplex[0].x[k] + shrink * (simplex[v].x[k] - simplex[0].x[k]);
                }
                simplex[v].fx = pb.eval(simplex[v].x);
            }
        }
        std::stable_sort(simplex.begin(), simplex.end(), by_value);
        best = simplex.front().x;
        result.value = simplex.front().fx;
        if (!done) break;
    }
    result.x = std::move(best);
    result.iterations = iter;
    result.evaluations = pb.evaluations;
    result.converged = done;
    return result;
}

}  // namespace epicast::optimize
