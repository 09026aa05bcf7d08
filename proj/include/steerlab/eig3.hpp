#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "steerlab/vec3.hpp"

namespace steerlab {

inline constexpr double kTolSym = 1e-12;
inline constexpr double kTolEig = 1e-10;

// Spectral decomposition of a symmetric 3x3 matrix.
// values are nonincreasing; vectors are orthonormal with a deterministic sign
// convention (first component of magnitude > 1e-12 is positive).
struct SymEig3 {
    std::array<double, 3> values{};
    std::array<Vec3, 3> vectors{};
};

namespace detail {

inline Vec3 fix_sign(Vec3 v) {
    double c = std::abs(v.x) > 1e-12 ? v.x : (std::abs(v.y) > 1e-12 ? v.y : v.z);
    return c < 0.0 ? -v : v;
}

// Characteristic polynomial p(x) = det(M - x I) and its derivative, used for a
// Newton refinement of the trigonometric eigenvalues.
inline double charpoly(const Mat3& m, double x, double* dp) {
    Mat3 a = m;
    a(0, 0) -= x;
    a(1, 1) -= x;
    a(2, 2) -= x;
    // d/dx det(M - xI) = -(sum of principal 2x2 minors of M - xI)
    double m0 = a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1);
    double m1 = a(0, 0) * a(2, 2) - a(0, 2) * a(2, 0);
    double m2 = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    *dp = -(m0 + m1 + m2);
    return a.det();
}

// Eigenvector from the cross products of the rows of (M - lambda I); the rows
// span the plane orthogonal to the eigenvector when lambda is simple.
inline Vec3 eigvec_from_rows(const Mat3& m, double lambda) {
    Mat3 a = m;
    a(0, 0) -= lambda;
    a(1, 1) -= lambda;
    a(2, 2) -= lambda;
    Vec3 c01 = a.row(0).cross(a.row(1));
    Vec3 c02 = a.row(0).cross(a.row(2));
    Vec3 c12 = a.row(1).cross(a.row(2));
    double n01 = c01.norm2(), n02 = c02.norm2(), n12 = c12.norm2();
    Vec3 best = c01;
    double nb = n01;
    if (n02 > nb) {
        best = c02;
        nb = n02;
    }
    if (n12 > nb) {
        best = c12;
        nb = n12;
    }
    return best.normalized();
}

// Eigenvector for eigenvalue lambda restricted to the plane orthogonal to w.
inline Vec3 eigvec_in_plane(const Mat3& m, double lambda, const Vec3& w) {
    Vec3 u = (std::abs(w.x) > 0.5 ? Vec3{-w.y, w.x, 0.0} : Vec3{0.0, -w.z, w.y}).normalized();
    Vec3 v = w.cross(u);
    Vec3 au = m.apply(u), av = m.apply(v);
    double a = u.dot(au) - lambda;
    double b = u.dot(av);
    double c = v.dot(av) - lambda;
    // null vector of [[a, b], [b, c]]
    if (std::abs(a) + std::abs(b) >= std::abs(b) + std::abs(c)) {
        double n = std::hypot(a, b);
        if (n < 1e-300) return u;
        return (u * (-b / n) + v * (a / n)).normalized();
    }
    double n = std::hypot(b, c);
    if (n < 1e-300) return u;
    return (u * (-c / n) + v * (b / n)).normalized();
}

}  // namespace detail

inline SymEig3 eig_sym3(const Mat3& m) {
    if (!m.finite()) throw std::invalid_argument("eig_sym3: non-finite entries");
    double scale = std::max(1.0, m.max_abs());
    if (std::abs(m(0, 1) - m(1, 0)) > kTolSym * scale ||
        std::abs(m(0, 2) - m(2, 0)) > kTolSym * scale ||
        std::abs(m(1, 2) - m(2, 1)) > kTolSym * scale)
        throw std::invalid_argument("eig_sym3: matrix is not symmetric");

    SymEig3 out;
    double q = m.trace() / 3.0;
    double p2 = (m(0, 0) - q) * (m(0, 0) - q) + (m(1, 1) - q) * (m(1, 1) - q) +
                (m(2, 2) - q) * (m(2, 2) - q) +
                2.0 * (m(0, 1) * m(0, 1) + m(0, 2) * m(0, 2) + m(1, 2) * m(1, 2));
    double p = std::sqrt(p2 / 6.0);

    if (p < 1e-14 * scale) {
        // (near-)scalar matrix
        out.values = {q, q, q};
        out.vectors = {Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}};
        return out;
    }

    Mat3 b = (m - Mat3::identity() * q) * (1.0 / p);
    double r = std::clamp(b.det() / 2.0, -1.0, 1.0);
    double phi = std::acos(r) / 3.0;
    double l0 = q + 2.0 * p * std::cos(phi);
    double l2 = q + 2.0 * p * std::cos(phi + 2.0 * M_PI / 3.0);
    double l1 = 3.0 * q - l0 - l2;

    // one Newton step per eigenvalue
    for (double* l : {&l0, &l1, &l2}) {
        double dp;
        double v = detail::charpoly(m, *l, &dp);
        if (std::abs(dp) > 1e-10 * scale * scale) {
            double step = v / dp;
            if (std::abs(step) < 1e-6 * scale) *l -= step;
        }
    }
    std::array<double, 3> lam = {l0, l1, l2};
    std::sort(lam.begin(), lam.end(), std::greater<double>());

    std::array<Vec3, 3> vec;
    // anchor on the better separated extreme eigenvalue
    int k = (lam[0] - lam[1]) >= (lam[1] - lam[2]) ? 0 : 2;
    vec[k] = detail::eigvec_from_rows(m, lam[k]);
    vec[1] = detail::eigvec_in_plane(m, lam[1], vec[k]);
    vec[2 - k] = vec[k].cross(vec[1]);
    for (int i = 0; i < 3; ++i) vec[i] = detail::fix_sign(vec[i]);

    out.values = lam;
    out.vectors = vec;
    return out;
}

// Singular value decomposition of a 3x3 matrix with proper rotations:
// T = u * diag(s[0], s[1], det_sign * s[2]) * v^T, with s nonincreasing and
// nonnegative, det(u) = det(v) = +1, and det_sign = sign(det T) in {+1, -1}.
struct Svd3 {
    Mat3 u = Mat3::identity();
    Mat3 v = Mat3::identity();
    std::array<double, 3> s{};
    double det_sign = 1.0;
};

inline Svd3 svd3(const Mat3& t) {
    if (!t.finite()) throw std::invalid_argument("svd3: non-finite entries");
    Svd3 out;
    Mat3 tt = t.transpose() * t;
    // symmetrize away accumulation noise before the strict symmetry check
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            double a = 0.5 * (tt(i, j) + tt(j, i));
            tt(i, j) = a;
            tt(j, i) = a;
        }
    SymEig3 e = eig_sym3(tt);
    for (int i = 0; i < 3; ++i) out.s[i] = std::sqrt(std::max(0.0, e.values[i]));

    std::array<Vec3, 3> v = e.vectors;
    if (Mat3::from_columns(v[0], v[1], v[2]).det() < 0.0) v[2] = -v[2];
    out.v = Mat3::from_columns(v[0], v[1], v[2]);

    double smax = std::max(out.s[0], 1e-300);
    std::array<Vec3, 3> u;
    int rank = 0;
    for (int i = 0; i < 3; ++i) {
        if (out.s[i] > 1e-13 * smax) {
            u[i] = t.apply(v[i]) / out.s[i];
            // re-orthogonalize against previous columns
            for (int j = 0; j < i; ++j) u[i] = u[i] - u[j] * u[j].dot(u[i]);
            u[i] = u[i].normalized();
            rank = i + 1;
        }
    }
    if (rank == 0) u[0] = {1, 0, 0};
    if (rank <= 1) {
        u[1] = (std::abs(u[0].x) > 0.5 ? Vec3{-u[0].y, u[0].x, 0.0}
                                       : Vec3{0.0, -u[0].z, u[0].y})
                   .normalized();
    }
    if (rank <= 2) u[2] = u[0].cross(u[1]);

    out.det_sign = t.det() < 0.0 ? -1.0 : 1.0;
    Mat3 um = Mat3::from_columns(u[0], u[1], u[2]);
    if (um.det() < 0.0) um = Mat3::from_columns(u[0], u[1], -u[2]);
    out.u = um;
    return out;
}

}  // namespace steerlab
