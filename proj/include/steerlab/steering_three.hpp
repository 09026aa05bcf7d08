#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

#include "steerlab/nelder_mead.hpp"
#include "steerlab/rng.hpp"
#include "steerlab/state.hpp"
#include "steerlab/steering_two.hpp"
#include "steerlab/weiszfeld.hpp"

namespace steerlab {

inline constexpr double kTolOrth = 1e-10;

// Lambda vectors of the three-observable compatibility criterion:
// L0 = r1 + r2 + r3, Lx = 2 rx - L0; hence L1 + L2 + L3 = -L0 exactly.
inline std::array<Vec3, 4> lambda_vectors(const NoisyObservable& r1,
                                          const NoisyObservable& r2,
                                          const NoisyObservable& r3) {
    Vec3 l0 = r1.r + r2.r + r3.r;
    return {l0, r1.r * 2.0 - l0, r2.r * 2.0 - l0, r3.r * 2.0 - l0};
}

// Closed-form Fermat-Toricelli vector when r3 is orthogonal to r1 and r2.
inline Vec3 ft_orthogonal(const NoisyObservable& r1, const NoisyObservable& r2,
                          const NoisyObservable& r3) {
    double scale = 1.0 + r1.r.norm() + r2.r.norm() + r3.r.norm();
    if (std::abs(r3.r.dot(r1.r)) > kTolOrth * scale ||
        std::abs(r3.r.dot(r2.r)) > kTolOrth * scale)
        throw std::invalid_argument("ft_orthogonal: r3 must be orthogonal to r1 and r2");
    double dm = (r1.r - r2.r).norm();
    double dp = (r1.r + r2.r).norm();
    double denom = dm + dp;
    if (denom <= 0.0) return {};  // r1 = r2 = 0: FT at origin
    return r3.r * ((dm - dp) / denom);
}

// Total distance sum_x |Lx - FT| in the orthogonal case:
// 2 sqrt((|r1 - r2| + |r1 + r2|)^2 + 4 |r3|^2).
inline double ft_orthogonal_total(const NoisyObservable& r1, const NoisyObservable& r2,
                                  const NoisyObservable& r3) {
    double a = (r1.r - r2.r).norm() + (r1.r + r2.r).norm();
    return 2.0 * std::sqrt(a * a + 4.0 * r3.r.norm2());
}

struct TripleAssessment {
    std::array<NoisyObservable, 3> r{};
    std::array<Vec3, 4> lambdas{};
    FTSolution ft{};
    double half_total = 0.0;
    bool compatible = false;
};

// Three-observable compatibility: sum_x |Lx - FT| <= 4 (boundary compatible).
inline TripleAssessment triple_compatible(const NoisyObservable& r1,
                                          const NoisyObservable& r2,
                                          const NoisyObservable& r3) {
    TripleAssessment out;
    out.r = {r1, r2, r3};
    out.lambdas = lambda_vectors(r1, r2, r3);

    double scale = 1.0 + r1.r.norm() + r2.r.norm() + r3.r.norm();
    bool orth = std::abs(r3.r.dot(r1.r)) <= kTolOrth * scale &&
                std::abs(r3.r.dot(r2.r)) <= kTolOrth * scale;
    if (orth) {
        out.ft.ft = ft_orthogonal(r1, r2, r3);
        out.ft.total_distance = ft_orthogonal_total(r1, r2, r3);
        out.ft.converged = true;
    } else {
        out.ft = weiszfeld(out.lambdas);
        if (!out.ft.converged)
            throw std::runtime_error("triple_compatible: FT solver did not converge");
    }
    out.half_total = 0.5 * out.ft.total_distance;
    out.compatible = out.ft.total_distance <= 4.0 + kTolCmp;
    return out;
}

// S3 lower bound 2 ||T||_F from the orthogonal eigenvector triple.
inline double s3_lower_bound(const BellDiagonalState& s) {
    return 2.0 * frobenius_norm(s);
}

// Sufficient criterion only: false means "not certified".
inline bool steerable_by_three_sufficient(const BellDiagonalState& s) {
    return frobenius_norm(s) > 1.0 + kTolCmp;
}

namespace detail {

inline Vec3 unit_from_angles(double theta, double phi) {
    double st = std::sin(theta);
    return {st * std::cos(phi), st * std::sin(phi), std::cos(theta)};
}

inline double s3_objective(const BellDiagonalState& s, const std::array<double, 6>& a) {
    Mat3 t = s.correlation_matrix();
    NoisyObservable r1{t.apply_transposed(unit_from_angles(a[0], a[1]))};
    NoisyObservable r2{t.apply_transposed(unit_from_angles(a[2], a[3]))};
    NoisyObservable r3{t.apply_transposed(unit_from_angles(a[4], a[5]))};
    FTSolution ft = weiszfeld(lambda_vectors(r1, r2, r3), 1e-10, 2000);
    return 0.5 * ft.total_distance;
}

}  // namespace detail

// Multi-start estimate of S3 = (1/2) max over measurement triples of the
// compatibility total. The eigenvector triple and the two-measurement optimum
// (third direction repeated) are always seeded, so the estimate dominates both
// 2||T||_F and S up to solver tolerance. Deterministic for a fixed seed.
inline double s3_estimate(const BellDiagonalState& s, int restarts, std::uint64_t seed) {
    if (restarts < 1) throw std::invalid_argument("s3_estimate: restarts must be >= 1");

    auto objective = [&](const std::array<double, 6>& a) {
        return detail::s3_objective(s, a);
    };

    const double half_pi = M_PI / 2.0;
    std::vector<std::array<double, 6>> starts;
    // eigenvector triple (coordinate axes in canonical form)
    starts.push_back({half_pi, 0.0, half_pi, half_pi, 0.0, 0.0});
    // two-measurement optimum with the second direction repeated
    starts.push_back({half_pi, 0.0, half_pi, half_pi, half_pi, half_pi});

    auto g = make_rng(seed);
    for (int k = 0; k < restarts; ++k)
        starts.push_back({uniform(g, 0.0, M_PI), uniform(g, 0.0, 2.0 * M_PI),
                          uniform(g, 0.0, M_PI), uniform(g, 0.0, 2.0 * M_PI),
                          uniform(g, 0.0, M_PI), uniform(g, 0.0, 2.0 * M_PI)});

    double best = 0.0;
    for (const auto& x0 : starts) {
        best = std::max(best, objective(x0));
        auto res = nelder_mead<6>([&](const std::array<double, 6>& a) { return -objective(a); },
                                  x0, 0.3, 600, 1e-10);
        best = std::max(best, -res.fx);
    }
    return best;
}

}  // namespace steerlab
