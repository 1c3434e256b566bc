#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "ofbf/polar.hpp"

using namespace ofbf;
using polar::PolarSystem;

namespace {

// random diagonalizable E = R diag(a, b) R^{-1} with eigenvalues in [1, 1.8]
RealMatrix random_exponent(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> eig(1.0, 1.8);
    std::uniform_real_distribution<double> ang(0, M_PI);
    const double a = eig(rng), b = eig(rng), th = ang(rng);
    const RealMatrix r(2, 2, {std::cos(th), -std::sin(th), std::sin(th), std::cos(th)});
    return r * RealMatrix::diag({a, b}) * r.transpose();
}

}  // namespace

TEST_CASE("norm0 for E = I is the Euclidean norm") {
    PolarSystem ps(RealMatrix::identity(2));
    CHECK(ps.norm0({3, 4}) == doctest::Approx(5.0).epsilon(1e-12));
    const Vec2 p = ps.s0_point(0.7);
    CHECK(p.norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("norm0 for scalar E divides by eta") {
    PolarSystem ps(RealMatrix::identity(2) * 2.0);
    CHECK(ps.norm0({3, 4}) == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("norm0 quadrature agrees with the eigenvector closed form") {
    // for an eigenvector with eigenvalue a, ||t^E x|| = t^a ||x||, so the
    // norm integral is ||x|| / a
    const double th = 0.6;
    const RealMatrix r(2, 2, {std::cos(th), -std::sin(th), std::sin(th), std::cos(th)});
    const RealMatrix e = r * RealMatrix::diag({1.2, 1.7}) * r.transpose();
    PolarSystem ps(e);
    const Vec2 v1{std::cos(th) * 2.0, std::sin(th) * 2.0};
    CHECK(ps.norm0(v1) == doctest::Approx(2.0 / 1.2).epsilon(1e-9));
    const Vec2 v2{-std::sin(th), std::cos(th)};
    CHECK(ps.norm0(v2) == doctest::Approx(1.0 / 1.7).epsilon(1e-9));
}

TEST_CASE("norm0 quadrature is stable under refinement") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int rep = 0; rep < 20; ++rep) {
        const RealMatrix e = random_exponent(rng);
        const Vec2 x{u(rng), u(rng)};
        if (x.norm() < 1e-3) continue;
        PolarSystem coarse(e, 64, 8);
        PolarSystem fine(e, 256, 8);
        CHECK(coarse.norm0(x) == doctest::Approx(fine.norm0(x)).epsilon(1e-8));
    }
}

TEST_CASE("decomposition on the unit sphere for E = I") {
    PolarSystem ps(RealMatrix::identity(2));
    const Vec2 x = unit_vec(1.1);
    const auto d = ps.decompose(x);
    CHECK(d.tau == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(d.l.x == doctest::Approx(x.x).epsilon(1e-12));
}

TEST_CASE("scalar-exponent decomposition matches tau = (c0 ||x||)^{1/eta}") {
    const double eta = 1.5;
    PolarSystem ps(RealMatrix::identity(2) * eta);
    const Vec2 x{0.8, -1.9};
    const auto d = ps.decompose(x);
    CHECK(d.tau == doctest::Approx(std::pow(x.norm() / eta, 1.0 / eta)).epsilon(1e-12));
    CHECK(ps.norm0(d.l) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("reconstruction and scaling covariance over random exponents") {
    std::mt19937_64 rng(117);
    std::uniform_real_distribution<double> u(-2, 2);
    std::uniform_real_distribution<double> cs(0.1, 10.0);
    int done = 0;
    while (done < 100) {
        const RealMatrix e = random_exponent(rng);
        const Vec2 x{u(rng), u(rng)};
        if (x.norm() < 0.05) continue;
        ++done;
        PolarSystem ps(e);
        const auto d = ps.decompose(x);
        // x = tau^E l
        const Vec2 rec = apply(mat_pow(e, d.tau), d.l);
        CHECK(std::hypot(rec.x - x.x, rec.y - x.y) < 1e-7 * std::max(1.0, x.norm()));
        CHECK(ps.norm0(d.l) == doctest::Approx(1.0).epsilon(1e-8));
        // tau(c^E x) = c tau(x), l(c^E x) = l(x)
        const double c = cs(rng);
        const auto dc = ps.decompose(apply(mat_pow(e, c), x));
        CHECK(dc.tau == doctest::Approx(c * d.tau).epsilon(1e-7));
        CHECK(std::hypot(dc.l.x - d.l.x, dc.l.y - d.l.y) < 1e-7);
    }
}

TEST_CASE("fixed scaling factors keep the direction") {
    PolarSystem ps(RealMatrix(2, 2, {1.3, 0.1, 0.05, 1.1}));
    const Vec2 x{1.0, 0.4};
    const auto base = ps.decompose(x);
    for (double c : {0.3, 2.0, 5.0}) {
        const auto d = ps.decompose(apply(mat_pow(ps.exponent(), c), x));
        CHECK(std::hypot(d.l.x - base.l.x, d.l.y - base.l.y) < 1e-7);
        CHECK(d.tau == doctest::Approx(c * base.tau).epsilon(1e-7));
    }
}

TEST_CASE("errors: zero vector and bad exponents") {
    PolarSystem ps(RealMatrix::identity(2));
    CHECK_THROWS_AS((void)ps.norm0({0, 0}), Error);
    CHECK_THROWS_AS((void)ps.decompose({0, 0}), Error);
    CHECK_THROWS_AS(PolarSystem(RealMatrix::diag({-0.5, 1.0})), Error);
}

TEST_CASE("one-dimensional systems") {
    PolarSystem ps(RealMatrix(1, 1, {1.0}));
    CHECK(ps.norm0({-3.0, 0}) == doctest::Approx(3.0));
    const auto d = ps.decompose({-3.0, 0});
    CHECK(d.tau == doctest::Approx(3.0));
    CHECK(d.l.x == doctest::Approx(-1.0));
}
