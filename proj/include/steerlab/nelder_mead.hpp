#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <vector>

namespace steerlab {

template <std::size_t N>
struct NelderMeadResult {
    std::array<double, N> x{};
    double fx = 0.0;
    int evaluations = 0;
    bool converged = false;
};

// Plain Nelder-Mead downhill simplex minimization.
template <std::size_t N, typename F>
NelderMeadResult<N> nelder_mead(F&& f, const std::array<double, N>& x0, double step,
                                int max_evals = 2000, double ftol = 1e-12) {
    using Point = std::array<double, N>;
    struct Vertex {
        Point x;
        double fx;
    };
    int evals = 0;
    auto eval = [&](const Point& p) {
        ++evals;
        return f(p);
    };

    std::vector<Vertex> s;
    s.reserve(N + 1);
    s.push_back({x0, eval(x0)});
    for (std::size_t i = 0; i < N; ++i) {
        Point p = x0;
        p[i] += step;
        s.push_back({p, eval(p)});
    }
    auto by_f = [](const Vertex& a, const Vertex& b) { return a.fx < b.fx; };
    std::sort(s.begin(), s.end(), by_f);

    NelderMeadResult<N> out;
    while (evals < max_evals) {
        if (std::abs(s.back().fx - s.front().fx) <=
            ftol * (1.0 + std::abs(s.front().fx))) {
            out.converged = true;
            break;
        }
        Point centroid{};
        for (std::size_t v = 0; v < N; ++v)
            for (std::size_t i = 0; i < N; ++i) centroid[i] += s[v].x[i] / N;

        auto affine = [&](double c) {
            Point p;
            for (std::size_t i = 0; i < N; ++i)
                p[i] = centroid[i] + c * (s.back().x[i] - centroid[i]);
            return p;
        };

        Point xr = affine(-1.0);
        double fr = eval(xr);
        if (fr < s.front().fx) {
            Point xe = affine(-2.0);
            double fe = eval(xe);
            s.back() = fe < fr ? Vertex{xe, fe} : Vertex{xr, fr};
        } else if (fr < s[N - 1].fx) {
            s.back() = {xr, fr};
        } else {
            Point xc = affine(fr < s.back().fx ? -0.5 : 0.5);
            double fc = eval(xc);
            if (fc < std::min(fr, s.back().fx)) {
                s.back() = {xc, fc};
            } else {
                for (std::size_t v = 1; v <= N; ++v) {
                    for (std::size_t i = 0; i < N; ++i)
                        s[v].x[i] = s[0].x[i] + 0.5 * (s[v].x[i] - s[0].x[i]);
                    s[v].fx = eval(s[v].x);
                }
            }
        }
        std::sort(s.begin(), s.end(), by_f);
    }
    out.x = s.front().x;
    out.fx = s.front().fx;
    out.evaluations = evals;
    return out;
}

}  // namespace steerlab
