#pragma once

#include <array>
#include <cmath>

#include "steerlab/eig3.hpp"
#include "steerlab/state.hpp"

namespace steerlab {

inline constexpr double kTolCmp = 1e-12;

// Busch criterion: two unbiased noisy binary observables are jointly
// measurable iff |r1 + r2| + |r1 - r2| <= 2.
inline double busch_sum(const NoisyObservable& r1, const NoisyObservable& r2) {
    return (r1.r + r2.r).norm() + (r1.r - r2.r).norm();
}

inline bool pair_compatible(const NoisyObservable& r1, const NoisyObservable& r2) {
    return busch_sum(r1, r2) <= 2.0 + kTolCmp;
}

// Steering measure S = 2 sqrt(lambda1 + lambda2) over the two largest
// eigenvalues of T T^T; in canonical form the top coordinate pair.
inline double steering_measure_S(const BellDiagonalState& s) {
    const Vec3& t = s.t();
    return 2.0 * std::sqrt(t.x * t.x + t.y * t.y);
}

// Maximal CHSH value; identical to the steering measure by construction.
inline double chsh_max(const BellDiagonalState& s) { return steering_measure_S(s); }

// Steerable by two projective measurements iff S > 2 (boundary unsteerable).
inline bool steerable_by_two(const BellDiagonalState& s) {
    return steering_measure_S(s) > 2.0 + kTolCmp;
}

inline double normalized_steering(const BellDiagonalState& s) {
    return std::max(0.0, (steering_measure_S(s) - 2.0) / (2.0 * std::sqrt(2.0) - 2.0));
}

struct OptimalPair {
    Vec3 e1{};
    Vec3 e2{};
    double s = 0.0;
};

// Mutually unbiased optimal pair: eigenvectors of T T^T for the two largest
// eigenvalues, with the deterministic sign convention of eig_sym3.
inline OptimalPair optimal_directions_two(const BellDiagonalState& s) {
    Mat3 t = s.correlation_matrix();
    SymEig3 e = eig_sym3(t * t.transpose());
    return {e.vectors[0], e.vectors[1], steering_measure_S(s)};
}

// Membership in the three solid cylinders t_i^2 + t_j^2 <= 1; all three hold
// iff the state is not steerable by two projective measurements.
inline std::array<bool, 3> cylinder_membership(const BellDiagonalState& s) {
    const Vec3& t = s.t();
    return {t.x * t.x + t.y * t.y <= 1.0 + kTolCmp,
            t.y * t.y + t.z * t.z <= 1.0 + kTolCmp,
            t.z * t.z + t.x * t.x <= 1.0 + kTolCmp};
}

}  // namespace steerlab
