#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "steerlab/eig3.hpp"
#include "steerlab/rng.hpp"
#include "steerlab/weiszfeld.hpp"

using namespace steerlab;

namespace {

Mat3 random_symmetric(std::mt19937_64& g) {
    Mat3 m;
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            double v = uniform(g, -2.0, 2.0);
            m(i, j) = v;
            m(j, i) = v;
        }
    return m;
}

Mat3 random_matrix(std::mt19937_64& g) {
    Mat3 m;
    for (double& e : m.m) e = uniform(g, -2.0, 2.0);
    return m;
}

double reconstruction_error(const Mat3& m, const SymEig3& e) {
    Mat3 r{};
    for (int k = 0; k < 3; ++k) {
        const Vec3& v = e.vectors[k];
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r(i, j) += e.values[k] * v[i] * v[j];
    }
    return (r - m).frobenius();
}

}  // namespace

TEST_CASE("eig_sym3 identity") {
    SymEig3 e = eig_sym3(Mat3::identity());
    for (double v : e.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("eig_sym3 diagonal") {
    SymEig3 e = eig_sym3(Mat3::diagonal(4, 1, 0));
    CHECK(e.values[0] == doctest::Approx(4.0).epsilon(1e-13));
    CHECK(e.values[1] == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(std::abs(e.values[2]) < 1e-13);
    CHECK(std::abs(std::abs(e.vectors[0].x) - 1.0) < 1e-12);
    CHECK(std::abs(std::abs(e.vectors[1].y) - 1.0) < 1e-12);
    CHECK(std::abs(std::abs(e.vectors[2].z) - 1.0) < 1e-12);
}

TEST_CASE("eig_sym3 rejects non-symmetric input") {
    Mat3 m = Mat3::identity();
    m(0, 1) = 0.1;
    CHECK_THROWS_AS(eig_sym3(m), std::invalid_argument);
}

TEST_CASE("eig_sym3 reconstruction and ordering on random matrices") {
    auto g = make_rng(1);
    for (int k = 0; k < 10000; ++k) {
        Mat3 m = random_symmetric(g);
        SymEig3 e = eig_sym3(m);
        CHECK(e.values[0] >= e.values[1]);
        CHECK(e.values[1] >= e.values[2]);
        CHECK(reconstruction_error(m, e) < 1e-10);
        for (int i = 0; i < 3; ++i) {
            CHECK((m.apply(e.vectors[i]) - e.vectors[i] * e.values[i]).norm() < kTolEig * 10);
            for (int j = 0; j < 3; ++j) {
                double want = i == j ? 1.0 : 0.0;
                CHECK(std::abs(e.vectors[i].dot(e.vectors[j]) - want) < kTolEig);
            }
        }
    }
}

TEST_CASE("eig_sym3 sign convention is deterministic") {
    auto g = make_rng(2);
    for (int k = 0; k < 100; ++k) {
        Mat3 m = random_symmetric(g);
        SymEig3 a = eig_sym3(m);
        SymEig3 b = eig_sym3(m);
        for (int i = 0; i < 3; ++i) {
            CHECK(a.vectors[i].x == b.vectors[i].x);
            double lead = std::abs(a.vectors[i].x) > 1e-12
                              ? a.vectors[i].x
                              : (std::abs(a.vectors[i].y) > 1e-12 ? a.vectors[i].y
                                                                  : a.vectors[i].z);
            CHECK(lead > 0.0);
        }
    }
}

TEST_CASE("svd3 of an orthogonal matrix has unit singular values") {
    Svd3 d = svd3(Mat3::diagonal(1, -1, 1));
    for (double s : d.s) CHECK(s == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(d.det_sign == -1.0);
}

TEST_CASE("svd3 of zero matrix") {
    Svd3 d = svd3(Mat3{});
    for (double s : d.s) CHECK(s == 0.0);
    CHECK(d.u.det() == doctest::Approx(1.0));
    CHECK(d.v.det() == doctest::Approx(1.0));
}

TEST_CASE("svd3 reconstruction and cross-check against eig_sym3") {
    auto g = make_rng(3);
    for (int k = 0; k < 2000; ++k) {
        Mat3 t = random_matrix(g);
        Svd3 d = svd3(t);
        CHECK(d.s[0] >= d.s[1]);
        CHECK(d.s[1] >= d.s[2]);
        CHECK(d.u.det() == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(d.v.det() == doctest::Approx(1.0).epsilon(1e-10));
        CHECK((d.u.transpose() * d.u - Mat3::identity()).frobenius() < 1e-10);
        CHECK((d.v.transpose() * d.v - Mat3::identity()).frobenius() < 1e-10);
        Mat3 rec = d.u * Mat3::diagonal(d.s[0], d.s[1], d.det_sign * d.s[2]) *
                   d.v.transpose();
        CHECK((rec - t).frobenius() < 1e-10);

        SymEig3 e = eig_sym3(t * t.transpose());
        for (int i = 0; i < 3; ++i)
            CHECK(std::abs(d.s[i] - std::sqrt(std::max(0.0, e.values[i]))) < 1e-9);
    }
}

TEST_CASE("svd3 singular values invariant under rotations") {
    auto g = make_rng(4);
    for (int k = 0; k < 500; ++k) {
        Mat3 t = random_matrix(g);
        Mat3 r1 = random_rotation(g), r2 = random_rotation(g);
        Svd3 a = svd3(t);
        Svd3 b = svd3(r1 * t * r2.transpose());
        for (int i = 0; i < 3; ++i) CHECK(std::abs(a.s[i] - b.s[i]) < 1e-10);
    }
}

TEST_CASE("weiszfeld degenerate cluster") {
    Vec3 q{0.3, -0.7, 1.1};
    FTSolution sol = weiszfeld({q, q, q, q});
    CHECK((sol.ft - q).norm() < 1e-12);
    CHECK(sol.total_distance < 1e-12);
    CHECK(sol.converged);
}

TEST_CASE("weiszfeld regular tetrahedron centered at origin") {
    std::array<Vec3, 4> pts = {Vec3{1, 1, 1}, Vec3{1, -1, -1}, Vec3{-1, 1, -1},
                               Vec3{-1, -1, 1}};
    FTSolution sol = weiszfeld(pts);
    CHECK(sol.ft.norm() < 1e-9);
    CHECK(sol.total_distance == doctest::Approx(4.0 * std::sqrt(3.0)).epsilon(1e-10));
}

TEST_CASE("weiszfeld vertex-anchored case") {
    // one point far inside the triangle of the others: its resultant is short
    std::array<Vec3, 4> pts = {Vec3{0, 0, 0.01}, Vec3{1, 0, 0}, Vec3{-0.5, 0.9, 0},
                               Vec3{-0.5, -0.9, 0}};
    FTSolution sol = weiszfeld(pts);
    CHECK(sol.anchored_vertex.has_value());
    CHECK(*sol.anchored_vertex == 0);
    CHECK((sol.ft - pts[0]).norm() == 0.0);
}

TEST_CASE("weiszfeld validates arguments") {
    std::array<Vec3, 4> pts{};
    CHECK_THROWS_AS(weiszfeld(pts, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(weiszfeld(pts, 1e-9, 0), std::invalid_argument);
}

TEST_CASE("weiszfeld minimality against probes and vertices") {
    auto g = make_rng(5);
    for (int k = 0; k < 200; ++k) {
        std::array<Vec3, 4> pts;
        for (auto& p : pts) p = random_unit_vector(g) * uniform(g, 0.0, 2.0);
        FTSolution sol = weiszfeld(pts);
        REQUIRE(sol.converged);
        double recomputed = 0.0;
        for (const Vec3& p : pts) recomputed += (p - sol.ft).norm();
        CHECK(std::abs(recomputed - sol.total_distance) < 1e-12);
        for (const Vec3& p : pts) {
            double at_vertex = 0.0;
            for (const Vec3& q : pts) at_vertex += (q - p).norm();
            CHECK(sol.total_distance <= at_vertex + 1e-9);
        }
        for (int probe = 0; probe < 100; ++probe) {
            Vec3 q = random_unit_vector(g) * uniform(g, 0.0, 2.5);
            double at_probe = 0.0;
            for (const Vec3& p : pts) at_probe += (p - q).norm();
            CHECK(sol.total_distance <= at_probe + 1e-9);
        }
    }
}

TEST_CASE("weiszfeld is rotation invariant") {
    auto g = make_rng(6);
    for (int k = 0; k < 200; ++k) {
        std::array<Vec3, 4> pts;
        for (auto& p : pts) p = random_unit_vector(g) * uniform(g, 0.0, 2.0);
        Mat3 r = random_rotation(g);
        std::array<Vec3, 4> rot;
        for (int i = 0; i < 4; ++i) rot[i] = r.apply(pts[i]);
        FTSolution a = weiszfeld(pts);
        FTSolution b = weiszfeld(rot);
        CHECK(std::abs(a.total_distance - b.total_distance) < 1e-9);
        CHECK((r.apply(a.ft) - b.ft).norm() < 1e-7);
    }
}
