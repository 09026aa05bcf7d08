#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "steerlab/rng.hpp"
#include "steerlab/state.hpp"
#include "steerlab/steering_two.hpp"

using namespace steerlab;

TEST_CASE("from_t maximally mixed") {
    BellDiagonalState s = from_t(0, 0, 0);
    for (double p : s.probabilities()) CHECK(p == doctest::Approx(0.25));
    CHECK(s.t().norm() == 0.0);
}

TEST_CASE("from_t singlet canonical form") {
    BellDiagonalState s = from_t(-1, -1, -1);
    CHECK(s.t().x == doctest::Approx(1.0));
    CHECK(s.t().y == doctest::Approx(1.0));
    CHECK(s.t().z == doctest::Approx(-1.0));
}

TEST_CASE("from_t rejects points outside the tetrahedron") {
    CHECK_THROWS_WITH_AS(from_t(1, 1, 1), doctest::Contains("negative"),
                         std::invalid_argument);
}

TEST_CASE("from_probabilities examples") {
    BellDiagonalState uniform_mix = from_probabilities(0.25, 0.25, 0.25, 0.25);
    CHECK(uniform_mix.t().norm() < 1e-15);

    BellDiagonalState singlet = from_probabilities(0, 0, 0, 1);
    CHECK(singlet.t().x == doctest::Approx(1.0));
    CHECK(singlet.t().y == doctest::Approx(1.0));
    CHECK(singlet.t().z == doctest::Approx(-1.0));

    BellDiagonalState e = from_probabilities(0.5, 0.5, 0, 0);
    CHECK(e.t().x == doctest::Approx(1.0));
    CHECK(std::abs(e.t().y) < 1e-15);
    CHECK(std::abs(e.t().z) < 1e-15);

    CHECK_THROWS_AS(from_probabilities(-0.1, 0.5, 0.3, 0.3), std::invalid_argument);
    CHECK_THROWS_AS(from_probabilities(0.3, 0.3, 0.3, 0.3), std::invalid_argument);
}

TEST_CASE("from_correlation_matrix examples") {
    auto g = make_rng(11);
    Mat3 rot = random_rotation(g);
    CHECK_THROWS_AS(from_correlation_matrix(rot), std::invalid_argument);

    BellDiagonalState singlet = from_correlation_matrix(Mat3::diagonal(1, -1, 1));
    CHECK(singlet.t().x == doctest::Approx(1.0));
    CHECK(singlet.t().z == doctest::Approx(-1.0));

    BellDiagonalState w = from_correlation_matrix(Mat3::diagonal(0.5, -0.5, 0.5));
    CHECK(w.t().x == doctest::Approx(0.5));
    CHECK(w.t().z == doctest::Approx(-0.5));
}

TEST_CASE("spectrum") {
    Spectrum4 mixed = spectrum(from_t(0, 0, 0));
    for (double p : mixed.p) CHECK(p == doctest::Approx(0.25));

    Spectrum4 singlet = spectrum(from_t(1, 1, -1));
    CHECK(singlet.p[0] == doctest::Approx(0.0));
    CHECK(singlet.p[3] == doctest::Approx(1.0));

    Spectrum4 w = spectrum(werner(0.8));
    CHECK(w.p[3] == doctest::Approx(0.8));
    for (int i = 0; i < 3; ++i) CHECK(w.p[i] == doctest::Approx(0.2 / 3.0));
}

TEST_CASE("concurrence") {
    CHECK(concurrence(from_t(0, 0, 0)) == 0.0);
    CHECK(concurrence(werner(0.9)) == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(concurrence(edge(0.75)) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("is_separable") {
    CHECK(is_separable(from_t(0, 0, 0)));
    CHECK_FALSE(is_separable(from_t(1, 1, -1)));
    CHECK(is_separable(werner(0.5)));
}

TEST_CASE("ellipsoid_volume") {
    CHECK(ellipsoid_volume(from_t(1, 1, -1)) == doctest::Approx(1.0));
    double f = 0.9;
    CHECK(ellipsoid_volume(werner(f)) ==
          doctest::Approx(std::pow(std::abs(4 * f - 1), 3) / 27.0).epsilon(1e-12));
    CHECK(ellipsoid_volume(edge(0.75)) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("frobenius_norm") {
    CHECK(frobenius_norm(from_t(0, 0, 0)) == 0.0);
    double f = 0.7;
    CHECK(frobenius_norm(werner(f)) ==
          doctest::Approx(std::abs(4 * f - 1) / std::sqrt(3.0)).epsilon(1e-12));
    CHECK(frobenius_norm(from_t(1, 1, -1)) == doctest::Approx(std::sqrt(3.0)));
}

TEST_CASE("werner family") {
    BellDiagonalState singlet = werner(1.0);
    CHECK(singlet.t().x == doctest::Approx(1.0));
    CHECK(singlet.t().z == doctest::Approx(-1.0));
    CHECK(werner(0.25).t().norm() < 1e-15);
    BellDiagonalState w0 = werner(0.0);
    CHECK(w0.t().x == doctest::Approx(1.0 / 3.0));
    CHECK(w0.t().z == doctest::Approx(1.0 / 3.0));  // det > 0 at f = 0
    CHECK_THROWS_AS(werner(1.5), std::invalid_argument);
}

TEST_CASE("edge family") {
    Spectrum4 bell = spectrum(edge(1.0));
    CHECK(bell.p[3] == doctest::Approx(1.0));

    BellDiagonalState boundary = edge(0.5);
    CHECK(boundary.t().x == doctest::Approx(1.0));
    CHECK(std::abs(boundary.t().y) < 1e-15);

    BellDiagonalState e = edge(0.75);
    CHECK(concurrence(e) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(ellipsoid_volume(e) == doctest::Approx(0.25).epsilon(1e-12));
    // p below 1/2 folds back
    CHECK(edge(0.25).t().y == doctest::Approx(edge(0.75).t().y));
    CHECK_THROWS_AS(edge(-0.1), std::invalid_argument);
}

TEST_CASE("steering_equivalent") {
    BellDiagonalState mixed = from_t(0, 0, 0);
    CHECK(steering_equivalent(mixed, {0, 0, 1}).r.norm() == 0.0);

    BellDiagonalState singlet = from_t(1, 1, -1);
    CHECK(steering_equivalent(singlet, {0, 0, 1}).r.norm() == doctest::Approx(1.0));

    NoisyObservable r = steering_equivalent(from_t(0.6, 0.3, 0.05), {1, 0, 0});
    CHECK(r.r.x == doctest::Approx(0.6));
    CHECK(r.r.y == 0.0);
    CHECK(r.r.z == 0.0);

    CHECK_THROWS_AS(steering_equivalent(mixed, {0, 0, 2}), std::invalid_argument);
}

TEST_CASE("round trip through probabilities preserves measures") {
    auto g = make_rng(12);
    for (int k = 0; k < 2000; ++k) {
        std::array<double, 4> e;
        double sum = 0;
        for (double& v : e) {
            v = -std::log(1.0 - uniform01(g));
            sum += v;
        }
        BellDiagonalState a =
            from_probabilities(e[0] / sum, e[1] / sum, e[2] / sum, e[3] / sum);
        Spectrum4 sp = spectrum(a);
        BellDiagonalState b = from_probabilities(sp.p[0], sp.p[1], sp.p[2], sp.p[3]);
        CHECK(std::abs(concurrence(a) - concurrence(b)) < 1e-12);
        CHECK(std::abs(steering_measure_S(a) - steering_measure_S(b)) < 1e-12);
        CHECK(std::abs(ellipsoid_volume(a) - ellipsoid_volume(b)) < 1e-12);
        CHECK(std::abs(frobenius_norm(a) - frobenius_norm(b)) < 1e-12);
    }
}

TEST_CASE("measures are invariant under rotations of the correlation matrix") {
    auto g = make_rng(13);
    for (int k = 0; k < 500; ++k) {
        BellDiagonalState a = from_t(uniform(g, 0, 0.33), uniform(g, 0, 0.33),
                                     uniform(g, -0.33, 0.33));
        Mat3 r1 = random_rotation(g), r2 = random_rotation(g);
        BellDiagonalState b =
            from_correlation_matrix(r1 * a.correlation_matrix() * r2.transpose());
        CHECK(std::abs(concurrence(a) - concurrence(b)) < 1e-10);
        CHECK(std::abs(ellipsoid_volume(a) - ellipsoid_volume(b)) < 1e-10);
        CHECK(std::abs(frobenius_norm(a) - frobenius_norm(b)) < 1e-10);
        CHECK(std::abs(steering_measure_S(a) - steering_measure_S(b)) < 1e-10);
    }
}

TEST_CASE("steering ellipsoid sits inside the Bloch sphere") {
    auto g = make_rng(14);
    for (int k = 0; k < 50; ++k) {
        std::array<double, 4> e;
        double sum = 0;
        for (double& v : e) {
            v = -std::log(1.0 - uniform01(g));
            sum += v;
        }
        BellDiagonalState s =
            from_probabilities(e[0] / sum, e[1] / sum, e[2] / sum, e[3] / sum);
        for (int j = 0; j < 1000; ++j)
            CHECK(steering_equivalent(s, random_unit_vector(g)).r.norm() <= 1.0 + 1e-12);
    }
}

TEST_CASE("separability equals the octahedron condition") {
    auto g = make_rng(15);
    for (int k = 0; k < 100000; ++k) {
        std::array<double, 4> e;
        double sum = 0;
        for (double& v : e) {
            v = -std::log(1.0 - uniform01(g));
            sum += v;
        }
        BellDiagonalState s =
            from_probabilities(e[0] / sum, e[1] / sum, e[2] / sum, e[3] / sum);
        const Vec3& t = s.t();
        bool octahedron = std::abs(t.x) + std::abs(t.y) + std::abs(t.z) <= 1.0 + 4 * kTolState;
        CHECK(is_separable(s) == octahedron);
    }
}

TEST_CASE("spectrum sums to one") {
    auto g = make_rng(16);
    for (int k = 0; k < 10000; ++k) {
        BellDiagonalState s = from_t(uniform(g, 0, 0.33), uniform(g, 0, 0.33),
                                     uniform(g, -0.33, 0.33));
        Spectrum4 sp = spectrum(s);
        CHECK(std::abs(sp.p[0] + sp.p[1] + sp.p[2] + sp.p[3] - 1.0) < 1e-12);
    }
}
