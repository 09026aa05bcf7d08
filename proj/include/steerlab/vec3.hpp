#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

namespace steerlab {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

    constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vec3 operator-() const { return {-x, -y, -z}; }
    constexpr Vec3 operator*(double c) const { return {c * x, c * y, c * z}; }
    constexpr Vec3 operator/(double c) const { return {x / c, y / c, z / c}; }

    constexpr double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    constexpr Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm() const { return std::sqrt(dot(*this)); }
    constexpr double norm2() const { return dot(*this); }
    Vec3 normalized() const {
        double n = norm();
        return {x / n, y / n, z / n};
    }
    bool finite() const {
        return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
    }
};

inline constexpr Vec3 operator*(double c, const Vec3& v) { return v * c; }

// Row-major 3x3 real matrix.
struct Mat3 {
    std::array<double, 9> m{};

    constexpr double operator()(int i, int j) const { return m[3 * i + j]; }
    constexpr double& operator()(int i, int j) { return m[3 * i + j]; }

    static constexpr Mat3 identity() {
        Mat3 r;
        r.m = {1, 0, 0, 0, 1, 0, 0, 0, 1};
        return r;
    }
    static constexpr Mat3 diagonal(double a, double b, double c) {
        Mat3 r;
        r.m = {a, 0, 0, 0, b, 0, 0, 0, c};
        return r;
    }
    static constexpr Mat3 from_columns(const Vec3& a, const Vec3& b, const Vec3& c) {
        Mat3 r;
        r.m = {a.x, b.x, c.x, a.y, b.y, c.y, a.z, b.z, c.z};
        return r;
    }

    constexpr Vec3 row(int i) const { return {m[3 * i], m[3 * i + 1], m[3 * i + 2]}; }
    constexpr Vec3 col(int j) const { return {m[j], m[3 + j], m[6 + j]}; }

    constexpr Vec3 apply(const Vec3& v) const {
        return {m[0] * v.x + m[1] * v.y + m[2] * v.z,
                m[3] * v.x + m[4] * v.y + m[5] * v.z,
                m[6] * v.x + m[7] * v.y + m[8] * v.z};
    }
    // T^T v without forming the transpose.
    constexpr Vec3 apply_transposed(const Vec3& v) const {
        return {m[0] * v.x + m[3] * v.y + m[6] * v.z,
                m[1] * v.x + m[4] * v.y + m[7] * v.z,
                m[2] * v.x + m[5] * v.y + m[8] * v.z};
    }

    constexpr Mat3 transpose() const {
        Mat3 r;
        r.m = {m[0], m[3], m[6], m[1], m[4], m[7], m[2], m[5], m[8]};
        return r;
    }

    constexpr Mat3 operator*(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                r(i, j) = (*this)(i, 0) * o(0, j) + (*this)(i, 1) * o(1, j) +
                          (*this)(i, 2) * o(2, j);
        return r;
    }
    constexpr Mat3 operator+(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 9; ++i) r.m[i] = m[i] + o.m[i];
        return r;
    }
    constexpr Mat3 operator-(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 9; ++i) r.m[i] = m[i] - o.m[i];
        return r;
    }
    constexpr Mat3 operator*(double c) const {
        Mat3 r;
        for (int i = 0; i < 9; ++i) r.m[i] = c * m[i];
        return r;
    }

    constexpr double det() const {
        return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
               m[2] * (m[3] * m[7] - m[4] * m[6]);
    }
    constexpr double trace() const { return m[0] + m[4] + m[8]; }
    double frobenius() const {
        double s = 0.0;
        for (double e : m) s += e * e;
        return std::sqrt(s);
    }
    double max_abs() const {
        double s = 0.0;
        for (double e : m) s = std::max(s, std::abs(e));
        return s;
    }
    bool finite() const {
        for (double e : m)
            if (!std::isfinite(e)) return false;
        return true;
    }
};

// Solve A x = b for a 3x3 system by Cramer's rule; throws on a singular A.
inline Vec3 solve3(const Mat3& a, const Vec3& b) {
    double d = a.det();
    if (std::abs(d) < 1e-300) throw std::domain_error("solve3: singular matrix");
    Mat3 ax = a, ay = a, az = a;
    for (int i = 0; i < 3; ++i) {
        ax(i, 0) = b[i];
        ay(i, 1) = b[i];
        az(i, 2) = b[i];
    }
    return {ax.det() / d, ay.det() / d, az.det() / d};
}

}  // namespace steerlab
