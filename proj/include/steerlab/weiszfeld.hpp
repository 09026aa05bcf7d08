#pragma once

#include <array>
#include <cmath>
#include <optional>

#include "steerlab/vec3.hpp"

namespace steerlab {

// Fermat-Toricelli point of four points in R^3.
struct FTSolution {
    Vec3 ft{};
    double total_distance = 0.0;
    int iterations = 0;
    bool converged = false;
    std::optional<int> anchored_vertex;
};

namespace detail {

inline double total_distance(const std::array<Vec3, 4>& pts, const Vec3& q) {
    double s = 0.0;
    for (const Vec3& p : pts) s += (p - q).norm();
    return s;
}

// Optimality test at vertex v: the resultant of unit vectors toward the other
// points must not exceed the multiplicity of v.
inline bool vertex_optimal(const std::array<Vec3, 4>& pts, int v, double coincide_tol,
                           Vec3* resultant) {
    Vec3 r{};
    int mult = 0;
    for (int i = 0; i < 4; ++i) {
        Vec3 d = pts[i] - pts[v];
        double n = d.norm();
        if (n <= coincide_tol)
            ++mult;  // counts v itself
        else
            r = r + d / n;
    }
    *resultant = r;
    return r.norm() <= static_cast<double>(mult) + 1e-12;
}

}  // namespace detail

// Modified Weiszfeld iteration with vertex-anchor test and Newton polish.
inline FTSolution weiszfeld(const std::array<Vec3, 4>& pts, double tol = 1e-11,
                            int max_iter = 10000) {
    if (!(tol > 0.0)) throw std::invalid_argument("weiszfeld: tol must be positive");
    if (max_iter < 1) throw std::invalid_argument("weiszfeld: max_iter must be >= 1");

    FTSolution sol;
    double scale = 0.0;
    for (const Vec3& p : pts) scale = std::max(scale, p.norm());
    double coincide_tol = 1e-13 * (1.0 + scale);

    // exact answer when a vertex is optimal (plain iteration is undefined there)
    for (int v = 0; v < 4; ++v) {
        Vec3 r;
        if (detail::vertex_optimal(pts, v, coincide_tol, &r)) {
            sol.ft = pts[v];
            sol.total_distance = detail::total_distance(pts, sol.ft);
            sol.converged = true;
            sol.anchored_vertex = v;
            return sol;
        }
    }

    Vec3 y = (pts[0] + pts[1] + pts[2] + pts[3]) / 4.0;
    int it = 0;
    for (; it < max_iter; ++it) {
        Vec3 num{};
        double den = 0.0;
        bool at_vertex = false;
        for (int i = 0; i < 4; ++i) {
            double d = (pts[i] - y).norm();
            if (d <= coincide_tol) {
                // not optimal here (checked above): step off along the descent direction
                Vec3 r;
                detail::vertex_optimal(pts, i, coincide_tol, &r);
                double rn = r.norm();
                y = pts[i] + r * (1e-8 * (1.0 + scale) / (rn > 0 ? rn : 1.0));
                at_vertex = true;
                break;
            }
            num = num + pts[i] / d;
            den += 1.0 / d;
        }
        if (at_vertex) continue;
        Vec3 next = num / den;
        double step = (next - y).norm();
        y = next;
        if (step <= 0.5 * tol * (1.0 + scale)) {
            sol.converged = true;
            break;
        }
    }

    // Newton polish on the smooth objective (quadratic convergence away from
    // the data points)
    for (int n = 0; n < 8; ++n) {
        Vec3 g{};
        Mat3 h{};
        bool near_vertex = false;
        for (int i = 0; i < 4; ++i) {
            Vec3 d = y - pts[i];
            double r = d.norm();
            if (r <= 1e-9 * (1.0 + scale)) {
                near_vertex = true;
                break;
            }
            g = g + d / r;
            double r3 = r * r * r;
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b)
                    h(a, b) += (a == b ? 1.0 / r : 0.0) - d[a] * d[b] / r3;
        }
        if (near_vertex || g.norm() <= 1e-15) break;
        Vec3 dy;
        try {
            dy = solve3(h, g);
        } catch (const std::domain_error&) {
            break;
        }
        Vec3 cand = y - dy;
        if (detail::total_distance(pts, cand) <= detail::total_distance(pts, y)) {
            y = cand;
            sol.converged = true;
        } else {
            break;
        }
    }

    sol.ft = y;
    sol.total_distance = detail::total_distance(pts, y);
    sol.iterations = it;
    return sol;
}

}  // namespace steerlab
