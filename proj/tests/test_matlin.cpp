#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "ofbf/matlin.hpp"
#include "oracles.hpp"

using namespace ofbf;

namespace {

double rel_err(const RealMatrix& got, const RealMatrix& want) {
    return (got - want).max_abs() / std::max(1.0, want.max_abs());
}

RealMatrix random_matrix(std::mt19937_64& rng, int n, double scale) {
    std::uniform_real_distribution<double> u(-scale, scale);
    RealMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = u(rng);
    return m;
}

}  // namespace

TEST_CASE("mat_pow of the zero matrix is the identity") {
    const RealMatrix z = RealMatrix::zero(2, 2);
    CHECK(rel_err(mat_pow(z, 7.3), RealMatrix::identity(2)) < 1e-15);
}

TEST_CASE("mat_pow of a diagonal matrix is entrywise") {
    const RealMatrix d = RealMatrix::diag({0.7, 1.4});
    const RealMatrix got = mat_pow(d, 2.5);
    CHECK(got(0, 0) == doctest::Approx(std::pow(2.5, 0.7)).epsilon(1e-13));
    CHECK(got(1, 1) == doctest::Approx(std::pow(2.5, 1.4)).epsilon(1e-13));
    CHECK(std::abs(got(0, 1)) < 1e-16);
}

TEST_CASE("mat_pow of the rotation generator gives a rotation") {
    // (e^theta)^J = exp(J theta) = [[cos, -sin], [sin, cos]]
    const RealMatrix j(2, 2, {0, -1, 1, 0});
    for (double theta : {0.3, 1.2, -0.8}) {
        const RealMatrix got = mat_pow(j, std::exp(theta));
        const RealMatrix want(2, 2, {std::cos(theta), -std::sin(theta), std::sin(theta),
                                     std::cos(theta)});
        CHECK(rel_err(got, want) < 1e-13);
    }
}

TEST_CASE("mat_pow matches the Taylor-series oracle") {
    std::mt19937_64 rng(42);
    for (int dim : {2, 3, 4}) {
        for (int rep = 0; rep < 40; ++rep) {
            const RealMatrix m = random_matrix(rng, dim, 1.2);
            for (double c : {0.17, 0.9, 3.7}) {
                const RealMatrix want = oracles::taylor_exp(m * std::log(c));
                CHECK(rel_err(mat_pow(m, c), want) < 1e-12);
            }
        }
    }
}

TEST_CASE("mat_pow group property and identity") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> cdist(0.1, 10.0);
    for (int rep = 0; rep < 50; ++rep) {
        const RealMatrix m = random_matrix(rng, 2, 1.0);
        const double c1 = cdist(rng), c2 = cdist(rng);
        const RealMatrix lhs = mat_pow(m, c1) * mat_pow(m, c2);
        const RealMatrix rhs = mat_pow(m, c1 * c2);
        CHECK(rel_err(lhs, rhs) < 1e-10);
        CHECK((mat_pow(m, 1.0) - RealMatrix::identity(2)).max_abs() < 1e-14);
    }
}

TEST_CASE("pd_sqrt basics") {
    CHECK(rel_err(pd_sqrt(HermitianMatrix::identity(2)), RealMatrix::identity(2)) < 1e-14);
    const RealMatrix got = pd_sqrt(HermitianMatrix(RealMatrix::diag({4, 9})));
    CHECK(rel_err(got, RealMatrix::diag({2, 3})) < 1e-12);
}

TEST_CASE("pd_sqrt of a rotated diagonal squares back") {
    const double th = M_PI / 6;
    const RealMatrix r(2, 2, {std::cos(th), -std::sin(th), std::sin(th), std::cos(th)});
    const RealMatrix m = r * RealMatrix::diag({4, 9}) * r.transpose();
    const RealMatrix s = pd_sqrt(HermitianMatrix(m));
    CHECK(rel_err(s * s, m) < 1e-10);
    CHECK((s - s.transpose()).max_abs() < 1e-12);
}

TEST_CASE("pd_sqrt property: random PD inputs") {
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 60; ++rep) {
        const int dim = 2 + static_cast<int>(rng() % 3);
        const RealMatrix a = random_matrix(rng, dim, 1.0);
        RealMatrix m = a * a.transpose() + RealMatrix::identity(dim) * 0.05;
        m = (m + m.transpose()) * 0.5;
        const RealMatrix s = pd_sqrt(HermitianMatrix(m));
        CHECK(rel_err(s * s, m) < 1e-10);
        CHECK((s - s.transpose()).max_abs() < 1e-10 * std::max(1.0, s.max_abs()));
    }
}

TEST_CASE("pd_sqrt rejects indefinite input") {
    CHECK_THROWS_AS((void)pd_sqrt(HermitianMatrix(RealMatrix::diag({1, -1}))), Error);
}

TEST_CASE("eig2_sym closed forms") {
    const Eig2Sym id = eig2_sym(RealMatrix::identity(2));
    CHECK(id.eig1 == doctest::Approx(1.0));
    CHECK(id.eig2 == doctest::Approx(1.0));
    CHECK(id.v1[0] == doctest::Approx(1.0));
    CHECK(id.v2[1] == doctest::Approx(1.0));

    const Eig2Sym d = eig2_sym(RealMatrix::diag({3, 1}));
    CHECK(d.eig1 == doctest::Approx(3.0));
    CHECK(d.eig2 == doctest::Approx(1.0));
    CHECK(d.v1[0] == doctest::Approx(1.0));

    const Eig2Sym m = eig2_sym(RealMatrix(2, 2, {2, 1, 1, 2}));
    CHECK(m.eig1 == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(m.eig2 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(m.v1[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(m.v1[1] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("eig2_sym residual M v = lambda v on random symmetric matrices") {
    std::mt19937_64 rng(3);
    for (int rep = 0; rep < 200; ++rep) {
        RealMatrix m = random_matrix(rng, 2, 2.0);
        m = (m + m.transpose()) * 0.5;
        const Eig2Sym e = eig2_sym(m);
        const double r1 = std::hypot(m(0, 0) * e.v1[0] + m(0, 1) * e.v1[1] - e.eig1 * e.v1[0],
                                     m(1, 0) * e.v1[0] + m(1, 1) * e.v1[1] - e.eig1 * e.v1[1]);
        const double r2 = std::hypot(m(0, 0) * e.v2[0] + m(0, 1) * e.v2[1] - e.eig2 * e.v2[0],
                                     m(1, 0) * e.v2[0] + m(1, 1) * e.v2[1] - e.eig2 * e.v2[1]);
        CHECK(r1 < 1e-12 * std::max(1.0, m.max_abs()));
        CHECK(r2 < 1e-12 * std::max(1.0, m.max_abs()));
        CHECK(std::abs(e.v1[0] * e.v2[0] + e.v1[1] * e.v2[1]) < 1e-13);
    }
}

TEST_CASE("is_psd basics and Gram property") {
    CHECK(is_psd(HermitianMatrix::identity(2), 1e-10));
    CHECK_FALSE(is_psd(HermitianMatrix(RealMatrix::diag({1, -1})), 1e-10));

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int rep = 0; rep < 100; ++rep) {
        const int dim = 1 + static_cast<int>(rng() % 2);
        ComplexMatrix a(dim, dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) a(i, j) = Complex(u(rng), u(rng));
        CHECK(is_psd(HermitianMatrix::gram(a), 1e-10));
    }
}

TEST_CASE("Hermitian construction symmetrizes and rejects asymmetry") {
    ComplexMatrix m(2, 2, {Complex(1, 0), Complex(0.5, 0.25), Complex(0.5, -0.25), Complex(2, 0)});
    const HermitianMatrix h(m);
    CHECK(h(0, 1) == std::conj(h(1, 0)));
    CHECK(h(0, 0).imag() == 0.0);

    ComplexMatrix bad(2, 2, {Complex(1, 0), Complex(1, 0), Complex(0, 0), Complex(1, 0)});
    CHECK_THROWS_AS((void)HermitianMatrix(bad), Error);
}

TEST_CASE("Hermitian eigenvalue bounds, complex 2x2") {
    // [[1, -i k], [i k, 1]] has eigenvalues 1 +- k
    ComplexMatrix m(2, 2, {Complex(1, 0), Complex(0, -0.5), Complex(0, 0.5), Complex(1, 0)});
    const HermitianMatrix h(m);
    CHECK(h.min_eig() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(h.max_eig() == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(h.pd());
}

TEST_CASE("hermitian_sqrt squares back") {
    ComplexMatrix m(2, 2, {Complex(2, 0), Complex(0.4, 0.3), Complex(0.4, -0.3), Complex(1.2, 0)});
    const HermitianMatrix h(m);
    const ComplexMatrix s = hermitian_sqrt(h);
    CHECK((s * s - h.matrix()).frobenius() < 1e-12);
    CHECK((s - s.adjoint()).frobenius() < 1e-12);
}

TEST_CASE("power_basis reproduces matrix powers") {
    std::mt19937_64 rng(17);
    for (int rep = 0; rep < 50; ++rep) {
        RealMatrix m = random_matrix(rng, 2, 1.0);
        m += RealMatrix::identity(2);  // push eigenvalues right
        PowerBasis pb;
        try {
            pb = power_basis(m);
        } catch (const Error&) {
            continue;  // near-defective draw
        }
        for (double s : {0.3, 1.7, 6.0}) {
            ComplexMatrix rec(2, 2);
            for (int k = 0; k < pb.terms; ++k)
                rec += pb.projector[k] * std::exp(-pb.lambda[k] * std::log(s));
            const RealMatrix want = mat_pow(m, 1.0 / s);
            CHECK((rec.real() - want).max_abs() < 1e-10 * std::max(1.0, want.max_abs()));
            CHECK(rec.imag().max_abs() < 1e-10 * std::max(1.0, want.max_abs()));
        }
    }
}

TEST_CASE("eig2_general complex pair") {
    const RealMatrix j(2, 2, {0, -1, 1, 0});
    const Eig2General e = eig2_general(j);
    CHECK(e.lambda1.real() == doctest::Approx(0.0));
    CHECK(std::abs(e.lambda1.imag()) == doctest::Approx(1.0));
    CHECK(min_re_eig(RealMatrix::diag({0.3, 0.9})) == doctest::Approx(0.3));
    CHECK(max_re_eig(RealMatrix::diag({0.3, 0.9})) == doctest::Approx(0.9));
}
