#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "steerlab/eig3.hpp"
#include "steerlab/vec3.hpp"

namespace steerlab {

inline constexpr double kTolState = 1e-12;

// Unbiased noisy binary qubit observable with effects (I +- r.sigma)/2.
struct NoisyObservable {
    Vec3 r{};
};

// Eigenvalues of the state, nondecreasing.
struct Spectrum4 {
    std::array<double, 4> p{};
};

// Bell-basis tetrahedron vertex for |beta_{mu,nu}>; its correlation matrix is
// diag((-1)^mu, -(-1)^(mu+nu), (-1)^nu).
inline constexpr Vec3 bell_vertex(int mu, int nu) {
    double a = mu ? -1.0 : 1.0;
    double c = nu ? -1.0 : 1.0;
    return {a, -a * c, c};
}

// Two-qubit Bell-diagonal state in canonical form: t1 >= t2 >= |t3|, with the
// sign of det T carried by t3.
class BellDiagonalState {
  public:
    const Vec3& t() const { return t_; }
    // Bell-basis probabilities p00, p01, p10, p11 of the canonical state.
    const std::array<double, 4>& probabilities() const { return p_; }
    const std::optional<Mat3>& raw_correlation() const { return raw_; }
    // Canonical (diagonal) correlation matrix.
    Mat3 correlation_matrix() const { return Mat3::diagonal(t_.x, t_.y, t_.z); }

    friend BellDiagonalState from_t(double t1, double t2, double t3);
    friend BellDiagonalState from_correlation_matrix(const Mat3& big_t);

  private:
    BellDiagonalState(const Vec3& canonical, std::optional<Mat3> raw)
        : t_(canonical), raw_(std::move(raw)) {
        for (int mu = 0; mu < 2; ++mu)
            for (int nu = 0; nu < 2; ++nu) {
                double p = 0.25 * (1.0 + bell_vertex(mu, nu).dot(t_));
                if (p < -kTolState)
                    throw std::invalid_argument(
                        "invalid Bell-diagonal state: probability p" +
                        std::to_string(mu) + std::to_string(nu) + " = " +
                        std::to_string(p) + " is negative");
                p_[2 * mu + nu] = std::max(p, 0.0);
            }
    }

    Vec3 t_{};
    std::array<double, 4> p_{};
    std::optional<Mat3> raw_;
};

inline BellDiagonalState from_t(double t1, double t2, double t3) {
    Vec3 raw{t1, t2, t3};
    if (!raw.finite()) throw std::invalid_argument("from_t: non-finite input");
    std::array<double, 3> a = {std::abs(t1), std::abs(t2), std::abs(t3)};
    std::sort(a.begin(), a.end(), std::greater<double>());
    double sign = (t1 * t2 * t3) < 0.0 ? -1.0 : 1.0;
    return BellDiagonalState({a[0], a[1], sign * a[2]},
                             Mat3::diagonal(t1, t2, t3));
}

inline BellDiagonalState from_probabilities(double p00, double p01, double p10,
                                            double p11) {
    std::array<double, 4> p = {p00, p01, p10, p11};
    double sum = 0.0;
    for (double v : p) {
        if (!(v >= 0.0))
            throw std::invalid_argument("from_probabilities: negative probability");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("from_probabilities: probabilities sum to " +
                                    std::to_string(sum));
    Vec3 t{};
    for (int mu = 0; mu < 2; ++mu)
        for (int nu = 0; nu < 2; ++nu) t = t + bell_vertex(mu, nu) * (p[2 * mu + nu] / sum);
    return from_t(t.x, t.y, t.z);
}

inline BellDiagonalState from_correlation_matrix(const Mat3& big_t) {
    Svd3 d = svd3(big_t);
    return BellDiagonalState({d.s[0], d.s[1], d.det_sign * d.s[2]}, big_t);
}

inline Spectrum4 spectrum(const BellDiagonalState& s) {
    Spectrum4 out;
    out.p = s.probabilities();
    std::sort(out.p.begin(), out.p.end());
    return out;
}

inline double concurrence(const BellDiagonalState& s) {
    const auto& p = s.probabilities();
    double pmax = *std::max_element(p.begin(), p.end());
    return std::max(0.0, 2.0 * pmax - 1.0);
}

inline bool is_separable(const BellDiagonalState& s) {
    const auto& p = s.probabilities();
    return *std::max_element(p.begin(), p.end()) <= 0.5 + kTolState;
}

// Normalized steering-ellipsoid volume V = |det T|.
inline double ellipsoid_volume(const BellDiagonalState& s) {
    const Vec3& t = s.t();
    return std::abs(t.x * t.y * t.z);
}

inline double frobenius_norm(const BellDiagonalState& s) { return s.t().norm(); }

// Werner state f|b11><b11| + (1-f)/3 (I - |b11><b11|): t = ((1-4f)/3)(1,1,1).
inline BellDiagonalState werner(double f) {
    if (!(f >= 0.0 && f <= 1.0))
        throw std::invalid_argument("werner: f must lie in [0, 1]");
    double t = (1.0 - 4.0 * f) / 3.0;
    return from_t(t, t, t);
}

// Edge state: mixture p |b01><b01| + (1-p) |b00><b00| of two Bell states,
// canonicalized to p >= 1/2; singular values (1, 2p-1, 2p-1).
inline BellDiagonalState edge(double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("edge: p must lie in [0, 1]");
    p = std::max(p, 1.0 - p);
    Vec3 t = bell_vertex(0, 1) * p + bell_vertex(0, 0) * (1.0 - p);
    return from_t(t.x, t.y, t.z);
}

// Bob's steering-equivalent observable for Alice's direction e: r = T^T e.
inline NoisyObservable steering_equivalent(const BellDiagonalState& s, const Vec3& e) {
    if (std::abs(e.norm() - 1.0) > 1e-9)
        throw std::invalid_argument("steering_equivalent: direction must be a unit vector");
    return {s.correlation_matrix().apply_transposed(e)};
}

}  // namespace steerlab
