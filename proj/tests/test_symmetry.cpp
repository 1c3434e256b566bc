#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "ofbf/construct.hpp"
#include "ofbf/symmetry.hpp"

using namespace ofbf;
using groups::CompactGroup2;
using spectral::OfbfSpec;
using spectral::ScalingPair;
using symmetry::MatrixKind;

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;

HermitianMatrix complex_value(double kappa = 0.3) {
    const RealMatrix re(2, 2, {1.0, 0.2, 0.2, 0.8});
    const RealMatrix im = RealMatrix(2, 2, {0, -1, 1, 0}) * kappa;
    return HermitianMatrix(ComplexMatrix(re, im));
}

OfbfSpec d3_so2_spec() {
    const auto d1 = complex_value();
    const auto sph = measures::dihedral_slices(3, d1, HermitianMatrix(d1.matrix().conj()));
    return OfbfSpec(ScalingPair(RealMatrix::identity(2), RealMatrix::identity(2) * 0.4), sph);
}

OfbfSpec isotropic_spec(double h = 0.35) {
    const auto sph = measures::SphericalMeasure::constant(2, HermitianMatrix::identity(2));
    return OfbfSpec(ScalingPair(RealMatrix::identity(2), RealMatrix::identity(2) * h), sph);
}

}  // namespace

TEST_CASE("centralizers of scalar and generic symmetric matrices") {
    CHECK(symmetry::centralizer_in_O2(RealMatrix::identity(2), MatrixKind::SymmetricPD).kind() ==
          groups::GroupKind::O2);
    const auto d2 = symmetry::centralizer_in_O2(RealMatrix::diag({3, 1}), MatrixKind::SymmetricPD);
    CHECK(d2.kind() == groups::GroupKind::Dihedral);
    CHECK(d2.nu() == 2);
    CHECK(d2.frame() == 0.0);

    // brute-force oracle: scan a dense O(2) grid for commuting elements
    const RealMatrix m = RealMatrix::diag({3, 1});
    int commuting_rot = 0, commuting_refl = 0;
    for (int k = 0; k < 720; ++k) {
        const double th = k * 2 * kPi / 720;
        const RealMatrix rot(2, 2, {std::cos(th), -std::sin(th), std::sin(th), std::cos(th)});
        const RealMatrix refl(2, 2, {std::cos(th), std::sin(th), std::sin(th), -std::cos(th)});
        if ((rot * m - m * rot).max_abs() < 1e-10) ++commuting_rot;
        if ((refl * m - m * refl).max_abs() < 1e-10) ++commuting_refl;
    }
    CHECK(commuting_rot == 2);   // I and -I
    CHECK(commuting_refl == 2);  // the two axis reflections
}

TEST_CASE("centralizer of a tilted symmetric matrix carries the eigenframe") {
    const double th = 0.4;
    const RealMatrix r(2, 2, {std::cos(th), -std::sin(th), std::sin(th), std::cos(th)});
    const RealMatrix m = r * RealMatrix::diag({2, 1}) * r.transpose();
    const auto g = symmetry::centralizer_in_O2(m, MatrixKind::SymmetricPD);
    CHECK(g.kind() == groups::GroupKind::Dihedral);
    CHECK(std::abs(g.frame() - th) < 1e-9);
    // its elements must commute with m
    for (const auto& e : g.element_matrices()) CHECK((e * m - m * e).max_abs() < 1e-9);
}

TEST_CASE("centralizers of skew matrices") {
    const RealMatrix j(2, 2, {0, -1, 1, 0});
    CHECK(symmetry::centralizer_in_O2(j, MatrixKind::Skew).kind() == groups::GroupKind::SO2);
    CHECK(symmetry::centralizer_in_O2(RealMatrix::zero(2, 2), MatrixKind::Skew).kind() ==
          groups::GroupKind::O2);
    CHECK_THROWS_AS(
        (void)symmetry::centralizer_in_O2(RealMatrix::identity(2), MatrixKind::Skew), Error);
}

TEST_CASE("range group of the isotropic density is O(2)") {
    CHECK(groups::same_canonical(symmetry::range_group(isotropic_spec()), CompactGroup2::o2()));
}

TEST_CASE("range group of the dihedral SO(2) construction") {
    CHECK(groups::same_canonical(symmetry::range_group(d3_so2_spec()), CompactGroup2::so2()));
}

TEST_CASE("range group D_2 from distinct Hurst eigenvalues") {
    const RealMatrix re(2, 2, {1.0, 0.0, 0.0, 0.7});
    const auto sph = measures::dihedral_slices(2, HermitianMatrix(re), HermitianMatrix(re * 2.0));
    const OfbfSpec spec(ScalingPair(RealMatrix::identity(2), RealMatrix::diag({0.3, 0.55})), sph);
    const auto g = symmetry::range_group(spec);
    CHECK(groups::same_canonical(g, CompactGroup2::dihedral(2)));

    // brute-force cross-check through the covariance itself
    for (const auto& e : g.element_matrices())
        CHECK(symmetry::covariance_invariance_deviation(spec, e, false) < 1e-5);
    const RealMatrix outside(2, 2,
                             {std::cos(0.9), -std::sin(0.9), std::sin(0.9), std::cos(0.9)});
    CHECK(symmetry::covariance_invariance_deviation(spec, outside, false) > 1e-2);
}

TEST_CASE("range group C_2 from a non-normal Hurst exponent") {
    const RealMatrix re(2, 2, {1.0, 0.2, 0.2, 0.8});
    const auto sph = measures::dihedral_slices(2, HermitianMatrix(re), HermitianMatrix(re * 2.0));
    const OfbfSpec spec(ScalingPair(RealMatrix::identity(2), RealMatrix(2, 2, {0.3, 0, 0.25, 0.55})),
                        sph);
    CHECK(groups::same_canonical(symmetry::range_group(spec), CompactGroup2::cyclic(2)));
}

TEST_CASE("range group is invariant under scaling the spherical values") {
    const auto base = d3_so2_spec();
    const auto scaled_measure = [&] {
        std::vector<HermitianMatrix> vals;
        for (const auto& v : base.spherical.values()) vals.push_back(v.scaled(7.0));
        return measures::SphericalMeasure::piecewise(2, base.spherical.breakpoints(), vals);
    }();
    const OfbfSpec scaled(base.scaling, scaled_measure);
    CHECK(groups::same_canonical(symmetry::range_group(base), symmetry::range_group(scaled)));
}

TEST_CASE("domain group detection") {
    CHECK(groups::same_group(symmetry::domain_of_measure(d3_so2_spec().spherical),
                             CompactGroup2::dihedral(3)));
    CHECK(symmetry::domain_of_measure(isotropic_spec().spherical).kind() == groups::GroupKind::O2);
    const auto pm = measures::extend_pivots_until_symmetry(CompactGroup2::cyclic(3));
    CHECK(groups::same_group(symmetry::domain_of_measure(pm), CompactGroup2::cyclic(3)));
    // lifted atomic measure keeps the domain group
    const auto xi = measures::xi_lift_gram(pm, complex_value());
    CHECK(groups::same_group(symmetry::domain_of_measure(xi), CompactGroup2::cyclic(3)));
}

TEST_CASE("domain group detection: cyclic slices") {
    const auto d1 = complex_value();
    const auto d2 = d1.scaled(2.0);
    const auto m = measures::cyclic_slices(3, d1, d2, HermitianMatrix(d1.matrix().conj()),
                                           HermitianMatrix(d2.matrix().conj()));
    CHECK(groups::same_group(symmetry::domain_of_measure(m), CompactGroup2::cyclic(3)));
}

TEST_CASE("range group collapses to C_2 across incompatible regions") {
    // two real PD values that are not scalar multiples: the per-region
    // conjugacies disagree, so only +-I survives the intersection
    const RealMatrix a(2, 2, {1.0, 0.0, 0.0, 0.5});
    const RealMatrix b(2, 2, {0.6, 0.2, 0.2, 1.1});
    std::vector<double> bps{0, kPi / 2, kPi, 3 * kPi / 2};
    std::vector<HermitianMatrix> vals{HermitianMatrix(a), HermitianMatrix(b), HermitianMatrix(a),
                                      HermitianMatrix(b)};
    const auto sph = measures::SphericalMeasure::piecewise(2, bps, vals);
    const OfbfSpec spec(ScalingPair(RealMatrix::identity(2), RealMatrix::diag({0.3, 0.55})), sph);
    CHECK(groups::same_canonical(symmetry::range_group(spec), CompactGroup2::cyclic(2)));
}

TEST_CASE("domain detection of a tilted reflection group") {
    // atoms {a, b} mirrored about the axis (a+b)/2 plus conjugate antipodes:
    // the symmetry is a one-reflection group with a tilted axis
    const double a = 0.31, b = 1.07;
    const auto v = complex_value();
    const HermitianMatrix vc{v.matrix().conj()};
    std::vector<measures::MatrixAtom> atoms{{a, v}, {b, v}, {a + kPi, vc}, {b + kPi, vc}};
    const auto m = measures::SphericalMeasure::atomic(2, 2, std::move(atoms));
    const auto g = symmetry::domain_of_measure(m);
    CHECK(g.kind() == groups::GroupKind::Dihedral);
    CHECK(g.nu() == 1);
    CHECK(g.frame() == doctest::Approx((a + b) / 2).epsilon(1e-9));
    // its reflection really preserves the measure
    for (const auto& e : g.element_matrices())
        CHECK(symmetry::covariance_invariance_deviation(
                  OfbfSpec(ScalingPair(RealMatrix::identity(2), RealMatrix::identity(2) * 0.4), m),
                  e, true) < 1e-5);
}

TEST_CASE("classification of a (1,2) operator fBm") {
    const RealMatrix re(2, 2, {1.0, 0.2, 0.2, 0.8});
    const RealMatrix im = RealMatrix(2, 2, {0, -1, 1, 0}) * 0.3;
    const HermitianMatrix aa{ComplexMatrix(re, im)};
    std::vector<measures::MatrixAtom> atoms{{1.0, aa}, {-1.0, HermitianMatrix(aa.matrix().conj())}};
    const auto sph = measures::SphericalMeasure::atomic(1, 2, std::move(atoms));
    const OfbfSpec spec(ScalingPair(RealMatrix(1, 1, {1.0}), RealMatrix::identity(2) * 0.4), sph);
    const auto rep = symmetry::classify(spec);
    CHECK(groups::same_canonical(rep.range_group, CompactGroup2::so2()));
    CHECK_FALSE(rep.isotropy.isotropic);  // Im != 0: not time-reversible
    // real parameter: time-reversible, range O(2)
    std::vector<measures::MatrixAtom> ratoms{{1.0, HermitianMatrix::identity(2)},
                                             {-1.0, HermitianMatrix::identity(2)}};
    const OfbfSpec rspec(ScalingPair(RealMatrix(1, 1, {1.0}), RealMatrix::identity(2) * 0.4),
                         measures::SphericalMeasure::atomic(1, 2, std::move(ratoms)));
    const auto rrep = symmetry::classify(rspec);
    CHECK(groups::same_canonical(rrep.range_group, CompactGroup2::o2()));
    CHECK(rrep.isotropy.isotropic);
}

TEST_CASE("pair admissibility") {
    CHECK(symmetry::validate_pair(CompactGroup2::dihedral(3), CompactGroup2::so2()).admissible);
    CHECK_FALSE(symmetry::validate_pair(CompactGroup2::cyclic(2), CompactGroup2::so2()).admissible);
    CHECK(symmetry::validate_pair(CompactGroup2::dihedral(2), CompactGroup2::o2()).admissible);
    CHECK(symmetry::validate_pair(CompactGroup2::dstar1(), CompactGroup2::cyclic(2)).admissible);
    CHECK_FALSE(symmetry::validate_pair(CompactGroup2::dstar1(), CompactGroup2::dihedral(2))
                    .admissible);
    CHECK_THROWS_AS((void)symmetry::validate_pair(CompactGroup2::so2(), CompactGroup2::cyclic(2)),
                    Error);
    CHECK_THROWS_AS(
        (void)symmetry::validate_pair(CompactGroup2::dihedral(2), CompactGroup2::cyclic(3)),
        Error);
}

TEST_CASE("exponent sets for the isotropic example") {
    const auto spec = isotropic_spec(0.35);
    const auto rep = symmetry::classify(spec);
    CHECK(rep.domain_group.kind() == groups::GroupKind::O2);
    CHECK(rep.range_group.kind() == groups::GroupKind::O2);
    CHECK_FALSE(rep.domain_exponents.tangent.zero);  // E + so(2)
    CHECK_FALSE(rep.range_exponents.tangent.zero);   // H + so(2)
    CHECK(rep.isotropy.isotropic);
    CHECK(rep.isotropy.eta == doctest::Approx(1.0));
    CHECK(rep.admissible);
}

TEST_CASE("exponent sets for the dihedral example are singletons on the domain side") {
    const auto rep = symmetry::classify(d3_so2_spec());
    CHECK(groups::same_group(rep.domain_group, CompactGroup2::dihedral(3)));
    CHECK(groups::same_canonical(rep.range_group, CompactGroup2::so2()));
    CHECK(rep.domain_exponents.tangent.zero);        // singleton {E}
    CHECK_FALSE(rep.range_exponents.tangent.zero);   // H + so(2)
    CHECK_FALSE(rep.isotropy.isotropic);             // scalar E alone is not enough
    CHECK(rep.admissible);
}

TEST_CASE("finite domain and C_2 range give singleton exponent sets") {
    const RealMatrix re(2, 2, {1.0, 0.2, 0.2, 0.8});
    const auto sph = measures::dihedral_slices(2, HermitianMatrix(re), HermitianMatrix(re * 2.0));
    const OfbfSpec spec(ScalingPair(RealMatrix::identity(2), RealMatrix(2, 2, {0.3, 0, 0.25, 0.55})),
                        sph);
    const auto rep = symmetry::classify(spec);
    CHECK(rep.domain_exponents.tangent.zero);
    CHECK(rep.range_exponents.tangent.zero);
}

TEST_CASE("sampled covariance invariance matches the classified domain group") {
    const auto spec = d3_so2_spec();
    const auto g = symmetry::domain_of_measure(spec.spherical);
    for (const auto& e : g.element_matrices())
        CHECK(symmetry::covariance_invariance_deviation(spec, e, true) < 1e-5);
    // -I must fail with a clear margin (SO(2) range forces -I out)
    CHECK(symmetry::covariance_invariance_deviation(spec, RealMatrix::identity(2) * -1.0, true) >
          1e-2);
}

TEST_CASE("classification of one-dimensional specs") {
    const HermitianMatrix w(RealMatrix(1, 1, {1.0}));
    std::vector<measures::MatrixAtom> atoms{{1.0, w}, {-1.0, w}};
    const auto sph = measures::SphericalMeasure::atomic(1, 1, std::move(atoms));
    const OfbfSpec spec(ScalingPair(RealMatrix(1, 1, {1.0}), RealMatrix(1, 1, {0.5})), sph);
    const auto rep = symmetry::classify(spec);
    CHECK(rep.domain_group.order() == 2);  // {+-1}
    CHECK(rep.isotropy.isotropic);         // symmetric real atoms: time-reversible
}
