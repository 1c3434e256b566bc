#include "ofbf/construct.hpp"

#include <cmath>

namespace ofbf::construct {

namespace {
constexpr double kPi = 3.1415926535897932384626433832795;
constexpr double kTwoPi = 2.0 * kPi;

const RealMatrix kJ(2, 2, {0, -1, 1, 0});

HermitianMatrix with_imag(const RealMatrix& re, double kappa) {
    return HermitianMatrix(ComplexMatrix(re, kJ * kappa));
}

// spanning atomic spec used to self-check a recipe through the classifier
OfbfSpec recipe_spec(const RangeGroupRecipe& r) {
    const HermitianMatrix conj_val(r.aastar.matrix().conj());
    std::vector<measures::MatrixAtom> atoms{{0.3, r.aastar},
                                            {0.3 + kPi, conj_val},
                                            {1.2, r.aastar},
                                            {1.2 + kPi, conj_val}};
    const auto sph = measures::SphericalMeasure::atomic(2, 2, std::move(atoms));
    return OfbfSpec(spectral::ScalingPair(RealMatrix::identity(2), r.h), sph);
}

}  // namespace

RangeTarget parse_range_target(const CompactGroup2& g) {
    using groups::GroupKind;
    if (g.kind() == GroupKind::O2) return RangeTarget::O2;
    if (g.kind() == GroupKind::SO2) return RangeTarget::SO2;
    if (g.kind() == GroupKind::Dihedral && g.nu() == 2) return RangeTarget::D2;
    if (g.kind() == GroupKind::Cyclic && g.nu() == 2) return RangeTarget::C2;
    throw Error(ErrorKind::InvalidInput, "range group must be C_2, D_2, SO(2) or O(2)");
}

CompactGroup2 range_target_group(RangeTarget t) {
    switch (t) {
        case RangeTarget::C2: return CompactGroup2::cyclic(2);
        case RangeTarget::D2: return CompactGroup2::dihedral(2);
        case RangeTarget::SO2: return CompactGroup2::so2();
        case RangeTarget::O2: return CompactGroup2::o2();
    }
    throw Error(ErrorKind::InvalidInput, "unknown range target");
}

const char* to_string(RangeTarget t) {
    switch (t) {
        case RangeTarget::C2: return "c2";
        case RangeTarget::D2: return "d2";
        case RangeTarget::SO2: return "so2";
        case RangeTarget::O2: return "o2";
    }
    return "?";
}

RangeGroupRecipe recipe_for_range(RangeTarget target, bool need_real) {
    if (need_real && target == RangeTarget::SO2)
        throw Error(ErrorKind::RecipeInvalid,
                    "SO(2) range needs Im(AA*) != 0; a real parametrization cannot provide it");
    RangeGroupRecipe r;
    r.target = target;
    const double h = 0.4;
    const double kappa = 0.5;
    switch (target) {
        case RangeTarget::O2:
            if (!need_real)
                throw Error(ErrorKind::RecipeInvalid, "O(2) range requires Im(AA*) = 0");
            r.h = RealMatrix::identity(2) * h;
            r.aastar = HermitianMatrix::identity(2);
            break;
        case RangeTarget::D2:
            if (!need_real)
                throw Error(ErrorKind::RecipeInvalid, "D_2 range requires Im(AA*) = 0");
            // distinct real eigenvalues of H pin the centralizer to D_2
            r.h = RealMatrix::diag({0.3, 0.55});
            r.aastar = HermitianMatrix::identity(2);
            break;
        case RangeTarget::SO2:
            r.h = RealMatrix::identity(2) * h;
            r.aastar = with_imag(RealMatrix::identity(2), kappa);
            break;
        case RangeTarget::C2:
            // non-normal H makes the eigenframe of Pi_r rotate with r
            r.h = RealMatrix(2, 2, {0.3, 0.0, 0.25, 0.55});
            if (need_real) {
                r.aastar = HermitianMatrix(RealMatrix(2, 2, {1.0, 0.2, 0.2, 0.8}));
            } else {
                r.aastar = with_imag(RealMatrix(2, 2, {1.0, 0.2, 0.2, 0.8}), 0.3);
            }
            break;
    }
    // never trust the constants: verify through the classifier
    const CompactGroup2 got = symmetry::range_group(recipe_spec(r));
    if (!groups::same_canonical(got, range_target_group(target)))
        throw Error(ErrorKind::RecipeInvalid, std::string("range recipe self-check failed: got ") +
                                                  groups::describe(got) + ", wanted " +
                                                  to_string(target));
    return r;
}

namespace {

void verify_roundtrip(const OfbfSpec& spec, const CompactGroup2& domain, RangeTarget range,
                      const char* what) {
    const CompactGroup2 dom_got = symmetry::domain_of_measure(spec.spherical);
    if (!groups::same_group(dom_got, domain, 1e-8))
        throw Error(ErrorKind::ConstructionFailure,
                    std::string(what) + ": domain round-trip failed, classifier returned " +
                        groups::describe(dom_got) + " for requested " + groups::describe(domain));
    const CompactGroup2 ran_got = symmetry::range_group(spec);
    if (!groups::same_canonical(ran_got, range_target_group(range)))
        throw Error(ErrorKind::ConstructionFailure,
                    std::string(what) + ": range round-trip failed, classifier returned " +
                        groups::describe(ran_got) + " for requested " + to_string(range));
    const auto rep = measures::validate(spec.spherical);
    if (!rep.ok())
        throw Error(ErrorKind::ConstructionFailure,
                    std::string(what) + ": constructed measure invalid: " + rep.detail);
}

void check_admissible(const CompactGroup2& domain, RangeTarget range) {
    const auto adm = symmetry::validate_pair(domain, range_target_group(range));
    if (!adm.admissible) throw Error(ErrorKind::IncompatibleSpec, adm.reason);
}

}  // namespace

OfbfSpec build_singular(const CompactGroup2& domain, RangeTarget range) {
    using groups::GroupKind;
    if (domain.kind() == GroupKind::O2)
        throw Error(ErrorKind::UseAbsolutelyContinuous,
                    "an O(2) domain group forces an absolutely continuous spectral measure");
    if (!domain.finite()) throw Error(ErrorKind::NotMaximal, "domain group must be maximal");
    check_admissible(domain, range);

    const bool minus_id = domain.contains_minus_identity();
    const RangeGroupRecipe recipe = recipe_for_range(range, /*need_real=*/minus_id);

    // pivots: at least 2 seeds for the span condition, grown until the
    // symmetry matches
    const auto lambda = measures::extend_pivots_until_symmetry(domain);
    const auto xi = measures::xi_lift_gram(lambda, recipe.aastar);
    OfbfSpec spec(spectral::ScalingPair(RealMatrix::identity(2), recipe.h), xi);
    verify_roundtrip(spec, domain, range, "build_singular");
    return spec;
}

OfbfSpec build_ac(const CompactGroup2& domain, RangeTarget range) {
    using groups::GroupKind;
    check_admissible(domain, range);
    const bool minus_id = domain.contains_minus_identity();
    const RangeGroupRecipe recipe = recipe_for_range(range, /*need_real=*/minus_id);
    const HermitianMatrix& aa = recipe.aastar;

    measures::SphericalMeasure sph = measures::SphericalMeasure::constant(2, HermitianMatrix::identity(2));
    switch (domain.kind()) {
        case GroupKind::O2:
            sph = measures::SphericalMeasure::constant(2, aa);
            break;
        case GroupKind::Dihedral: {
            const int nu = domain.nu();
            const HermitianMatrix d2 =
                (nu % 2 == 1) ? HermitianMatrix(aa.matrix().conj()) : aa.scaled(2.0);
            sph = measures::dihedral_slices(nu, aa, d2);
            break;
        }
        case GroupKind::Cyclic: {
            const int nu = domain.nu();
            if (nu % 2 == 1) {
                const HermitianMatrix d2 = aa.scaled(2.0);
                sph = measures::cyclic_slices(nu, aa, d2, HermitianMatrix(aa.matrix().conj()),
                                              HermitianMatrix(d2.matrix().conj()));
            } else {
                sph = measures::cyclic_slices(nu, aa, aa.scaled(2.0), aa.scaled(3.0),
                                              aa.scaled(4.0));
            }
            break;
        }
        case GroupKind::DStar1: {
            // two arcs split by the horizontal axis: the vertical-axis
            // reflection diag(-1,1) maps each half-circle to itself, while
            // conjugate values on the lower half keep -I and diag(1,-1) out
            std::vector<double> bps{0.0, kPi};
            std::vector<HermitianMatrix> vals{aa, HermitianMatrix(aa.matrix().conj())};
            sph = measures::SphericalMeasure::piecewise(2, bps, vals);
            break;
        }
        default:
            throw Error(ErrorKind::InvalidInput,
                        "absolutely continuous construction needs C_nu, D_nu, D*_1 or O(2)");
    }
    OfbfSpec spec(spectral::ScalingPair(RealMatrix::identity(2), recipe.h), sph);
    verify_roundtrip(spec, domain, range, "build_ac");
    return spec;
}

}  // namespace ofbf::construct
