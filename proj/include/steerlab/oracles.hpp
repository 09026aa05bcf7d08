#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "steerlab/nelder_mead.hpp"
#include "steerlab/rng.hpp"
#include "steerlab/state.hpp"
#include "steerlab/steering_two.hpp"

namespace steerlab {

// Brute-force maximum of |r1 + r2| + |r1 - r2| over a product grid of
// directions, with r = T^T e on the canonical (diagonal) correlation matrix.
// Grid: theta_k = k pi / n_theta (k = 0..n_theta), phi_j = 2 pi j / n_phi, so
// doubling the resolution refines the grid in place and the maximum is
// monotone nondecreasing; every evaluation is a true value of the objective,
// so the result approaches S from below.
//
// The diagonal T makes the objective invariant under simultaneous coordinate
// sign flips of both directions and under e -> -e for each direction, so e1
// runs over one octant and e2 over a hemisphere.
inline double s_grid_oracle(const BellDiagonalState& s, int n_theta, int n_phi) {
    if (n_theta < 8 || n_phi < 8)
        throw std::invalid_argument("s_grid_oracle: grid sizes must be >= 8");

    const Vec3& t = s.t();

    auto build = [&](int k_max, int j_max, std::vector<double>& x, std::vector<double>& y,
                     std::vector<double>& z) {
        for (int k = 0; k <= k_max; ++k) {
            double theta = M_PI * k / n_theta;
            double st = std::sin(theta), ct = std::cos(theta);
            int jm = (k == 0) ? 0 : j_max;  // pole collapses to one point
            for (int j = 0; j <= jm; ++j) {
                double phi = 2.0 * M_PI * j / n_phi;
                x.push_back(t.x * st * std::cos(phi));
                y.push_back(t.y * st * std::sin(phi));
                z.push_back(t.z * ct);
            }
        }
    };

    // e1: octant theta in [0, pi/2], phi in [0, pi/2]
    std::vector<double> ax, ay, az;
    build(n_theta / 2, n_phi / 4, ax, ay, az);
    // e2: hemisphere theta in [0, pi/2], full phi
    std::vector<double> bx, by, bz;
    build(n_theta / 2, n_phi - 1, bx, by, bz);

    const std::size_t nb = bx.size();
    double best = 0.0;
    for (std::size_t i = 0; i < ax.size(); ++i) {
        const double r1x = ax[i], r1y = ay[i], r1z = az[i];
        double row_best = 0.0;
        for (std::size_t j = 0; j < nb; ++j) {
            double sx = r1x + bx[j], sy = r1y + by[j], sz = r1z + bz[j];
            double dx = r1x - bx[j], dy = r1y - by[j], dz = r1z - bz[j];
            double f = std::sqrt(sx * sx + sy * sy + sz * sz) +
                       std::sqrt(dx * dx + dy * dy + dz * dz);
            row_best = std::max(row_best, f);
        }
        best = std::max(best, row_best);
    }
    return best;
}

// Direct Fermat-Toricelli minimizer: coarse grid over the bounding box
// followed by Nelder-Mead refinement.
inline Vec3 ft_direct_oracle(const std::array<Vec3, 4>& pts) {
    Vec3 lo = pts[0], hi = pts[0];
    for (const Vec3& p : pts) {
        lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
        hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
    }
    auto total = [&](const Vec3& q) {
        double s = 0.0;
        for (const Vec3& p : pts) s += (p - q).norm();
        return s;
    };

    const int n = 16;
    Vec3 best = (pts[0] + pts[1] + pts[2] + pts[3]) / 4.0;
    double fbest = total(best);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j)
            for (int k = 0; k <= n; ++k) {
                Vec3 q{lo.x + (hi.x - lo.x) * i / n, lo.y + (hi.y - lo.y) * j / n,
                       lo.z + (hi.z - lo.z) * k / n};
                double f = total(q);
                if (f < fbest) {
                    fbest = f;
                    best = q;
                }
            }
    // include the vertices themselves (the minimum may sit on a data point)
    for (const Vec3& p : pts) {
        double f = total(p);
        if (f < fbest) {
            fbest = f;
            best = p;
        }
    }

    double span = std::max({hi.x - lo.x, hi.y - lo.y, hi.z - lo.z, 1e-12});
    auto res = nelder_mead<3>(
        [&](const std::array<double, 3>& a) { return total({a[0], a[1], a[2]}); },
        {best.x, best.y, best.z}, span / n, 4000, 1e-15);
    Vec3 refined{res.x[0], res.x[1], res.x[2]};
    return total(refined) < fbest ? refined : best;
}

enum class PovmFeasibility { feasible, infeasible, boundary_inconclusive };

// Search for a 4-outcome parent POVM G = (a I + m.sigma)/2 reproducing both
// observables by deterministic post-processing. The marginal constraints fix
// the outcome weights up to alpha = a_{++} and the vector m = m_{++}:
//   a = (alpha, 1-alpha, 1-alpha, alpha)
//   m = (m, r1 - m, r2 - m, m - r1 - r2)
// Feasible iff some (alpha, m) satisfies a_k >= |m_k| for all four outcomes.
// Decided by multistart minimization of the worst constraint violation.
inline PovmFeasibility parent_povm_feasible(const NoisyObservable& r1,
                                            const NoisyObservable& r2, double tol) {
    auto slack = [&](const std::array<double, 4>& p) {
        double alpha = p[0];
        Vec3 m{p[1], p[2], p[3]};
        double worst = std::max(
            {m.norm() - alpha, (r1.r - m).norm() - (1.0 - alpha),
             (r2.r - m).norm() - (1.0 - alpha), (m - r1.r - r2.r).norm() - alpha});
        // penalty keeps alpha inside [0, 1]
        double out = std::max(0.0, -alpha) + std::max(0.0, alpha - 1.0);
        return worst + 1e4 * out * out;
    };

    Vec3 mid = (r1.r + r2.r) * 0.5;
    double best = slack({0.5, mid.x, mid.y, mid.z});
    auto g = make_rng(20240811ULL);
    const int restarts = 64;
    for (int k = 0; k <= restarts; ++k) {
        std::array<double, 4> x0;
        if (k == 0) {
            x0 = {0.5, mid.x, mid.y, mid.z};
        } else {
            Vec3 m = random_unit_vector(g) * uniform01(g);
            x0 = {uniform01(g), m.x, m.y, m.z};
        }
        auto res = nelder_mead<4>(slack, x0, 0.2, 800, 1e-13);
        best = std::min(best, res.fx);
    }
    if (best < -tol) return PovmFeasibility::feasible;
    if (best > tol) return PovmFeasibility::infeasible;
    return PovmFeasibility::boundary_inconclusive;
}

}  // namespace steerlab
