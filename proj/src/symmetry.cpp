#include "ofbf/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ofbf::symmetry {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kPi = 3.1415926535897932384626433832795;

double wrap_angle(double a) {
    double r = std::fmod(a, kTwoPi);
    if (r < 0) r += kTwoPi;
    return r;
}

double circ_dist(double a, double b) {
    double d = std::abs(wrap_angle(a) - wrap_angle(b));
    return std::min(d, kTwoPi - d);
}

double mod_positive(double x, double period) {
    double r = std::fmod(x, period);
    if (r < 0) r += period;
    return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// Centralizers
// ---------------------------------------------------------------------------

CompactGroup2 centralizer_in_O2(const RealMatrix& m, MatrixKind kind) {
    if (m.rows() != 2 || m.cols() != 2)
        throw Error(ErrorKind::InvalidInput, "centralizer computation is 2x2 only");
    const double scale = std::max(1.0, m.max_abs());
    if (kind == MatrixKind::Skew) {
        if ((m + m.transpose()).max_abs() > 1e-9 * scale)
            throw Error(ErrorKind::InvalidInput, "matrix is not skew-symmetric");
        if (m.max_abs() <= 1e-12 * scale) return CompactGroup2::o2();
        return CompactGroup2::so2();
    }
    const Eig2Sym e = eig2_sym(m, 1e-9);
    if (!(e.eig2 > 0))
        throw Error(ErrorKind::InvalidInput, "matrix is not positive definite");
    if (e.eig1 - e.eig2 <= 1e-9 * std::max(1.0, e.eig1)) return CompactGroup2::o2();
    // distinct eigenvalues: reflections about the eigenaxes
    const double phi = mod_positive(std::atan2(e.v1[1], e.v1[0]), 0.5 * kPi);
    if (phi < 1e-12 || 0.5 * kPi - phi < 1e-12) return CompactGroup2::dihedral(2);
    return CompactGroup2::dihedral(2).with_frame(phi);
}

// ---------------------------------------------------------------------------
// Range group
// ---------------------------------------------------------------------------

namespace {

// Per-region group before the conjugation by W_Theta, tracked canonically.
struct CoreGroup {
    enum Kind { O2, SO2, D2, C2 } kind = O2;
    double frame = 0;  // for D2, modulo pi/2
};

CoreGroup intersect_core(CoreGroup a, CoreGroup b) {
    auto rank = [](CoreGroup::Kind k) {
        switch (k) {
            case CoreGroup::O2: return 3;
            case CoreGroup::SO2: return 2;
            case CoreGroup::D2: return 1;
            case CoreGroup::C2: return 0;
        }
        return 0;
    };
    if (rank(a.kind) < rank(b.kind)) std::swap(a, b);
    // a is the larger of the two
    if (b.kind == CoreGroup::C2) return b;
    if (a.kind == CoreGroup::O2) return b;
    if (a.kind == CoreGroup::SO2)
        return b.kind == CoreGroup::SO2 ? b : CoreGroup{CoreGroup::C2, 0};
    // both D2: frames must agree modulo pi/2
    const double d = std::abs(mod_positive(a.frame - b.frame + 0.25 * kPi, 0.5 * kPi) - 0.25 * kPi);
    if (d < 1e-7) return a;
    return CoreGroup{CoreGroup::C2, 0};
}

CompactGroup2 core_to_group(const CoreGroup& core, const RealMatrix& w) {
    CompactGroup2 g = CompactGroup2::cyclic(2);
    switch (core.kind) {
        case CoreGroup::O2: g = CompactGroup2::o2(); break;
        case CoreGroup::SO2: g = CompactGroup2::so2(); break;
        case CoreGroup::D2: g = CompactGroup2::dihedral(2).with_frame(core.frame); break;
        case CoreGroup::C2: return CompactGroup2::cyclic(2);
    }
    if ((w - RealMatrix::identity(2)).max_abs() > 1e-14) g = g.with_conjugacy(w);
    return g;
}

}  // namespace

CompactGroup2 range_group(const OfbfSpec& spec) {
    if (spec.n() != 2)
        throw Error(ErrorKind::UnsupportedDimension, "range classification implemented for n = 2");
    const auto& sph = spec.spherical;
    const RealMatrix h = spec.scaling.range_exponent();

    // regions intersecting the interior of the support of Re Delta
    std::vector<HermitianMatrix> regions;
    if (sph.variant() == measures::MeasureVariant::Atomic) {
        for (const auto& a : sph.atoms())
            if (a.value.max_eig() > 1e-14) regions.push_back(a.value);
    } else if (sph.variant() == measures::MeasureVariant::Constant) {
        regions.push_back(sph.constant_value());
    } else {
        for (const auto& v : sph.values())
            if (v.max_eig() > 1e-14) regions.push_back(v);
    }
    if (regions.empty()) throw Error(ErrorKind::DegenerateSpec, "empty spherical support");

    static const double r_grid[] = {0.125, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 3.0, 5.0};

    std::optional<CompactGroup2> combined;
    for (const auto& value : regions) {
        const RealMatrix w_theta = pd_sqrt(HermitianMatrix(value.real()));
        const RealMatrix w_inv = w_theta.inverse();
        const RealMatrix a = w_inv * h * w_theta;

        CoreGroup core{CoreGroup::O2, 0};
        for (double r : r_grid) {
            const RealMatrix ra = mat_pow(a, 1.0 / r);                 // r^{-A}
            const RealMatrix pi_r = ra * ra.transpose();               // r^{-A} r^{-A^T}
            const CompactGroup2 cent = centralizer_in_O2((pi_r + pi_r.transpose()) * 0.5,
                                                         MatrixKind::SymmetricPD);
            if (cent.kind() == groups::GroupKind::O2) continue;
            core = intersect_core(core, CoreGroup{CoreGroup::D2, cent.frame()});
        }
        const RealMatrix im = value.imag();
        if (im.max_abs() > 1e-12 * std::max(1.0, value.matrix().frobenius()))
            core = intersect_core(core, CoreGroup{CoreGroup::SO2, 0});

        const CompactGroup2 g_theta = core_to_group(core, groups::det_normalized(w_theta));
        combined = combined ? groups::intersect(*combined, g_theta) : g_theta;
    }
    return *combined;
}

// ---------------------------------------------------------------------------
// Domain group of a measure
// ---------------------------------------------------------------------------

namespace {

using measures::MatrixAtom;
using measures::SphericalMeasure;

bool values_equal(const HermitianMatrix& a, const HermitianMatrix& b, double tol = 1e-10) {
    const double scale = std::max({1.0, a.matrix().frobenius(), b.matrix().frobenius()});
    return (a.matrix() - b.matrix()).frobenius() <= tol * scale;
}

bool atom_at(const std::vector<MatrixAtom>& atoms, double angle, const HermitianMatrix& value) {
    for (const auto& a : atoms)
        if (circ_dist(a.angle, angle) < 1e-9 && values_equal(a.value, value)) return true;
    return false;
}

bool rotation_preserves_atoms(const std::vector<MatrixAtom>& atoms, double delta) {
    for (const auto& a : atoms)
        if (!atom_at(atoms, a.angle + delta, a.value)) return false;
    return true;
}

bool reflection_preserves_atoms(const std::vector<MatrixAtom>& atoms, double phi) {
    for (const auto& a : atoms)
        if (!atom_at(atoms, phi - a.angle, a.value)) return false;
    return true;
}

bool rotation_preserves_arcs(const SphericalMeasure& m, double delta) {
    const auto& bps = m.breakpoints();
    for (size_t i = 0; i < bps.size(); ++i) {
        bool hit = false;
        for (double b : bps) hit = hit || circ_dist(b, bps[i] + delta) < 1e-9;
        if (!hit) return false;
        const double a = bps[i];
        const double b = (i + 1 < bps.size()) ? bps[i + 1] : bps.front() + kTwoPi;
        if (!values_equal(m.value_at(0.5 * (a + b) + delta), m.values()[i])) return false;
    }
    return true;
}

bool reflection_preserves_arcs(const SphericalMeasure& m, double phi) {
    const auto& bps = m.breakpoints();
    for (size_t i = 0; i < bps.size(); ++i) {
        bool hit = false;
        for (double b : bps) hit = hit || circ_dist(b, phi - bps[i]) < 1e-9;
        if (!hit) return false;
        const double a = bps[i];
        const double b = (i + 1 < bps.size()) ? bps[i + 1] : bps.front() + kTwoPi;
        if (!values_equal(m.value_at(phi - 0.5 * (a + b)), m.values()[i])) return false;
    }
    return true;
}

CompactGroup2 assemble_group(std::vector<double> rotations, std::vector<double> reflections) {
    const int nu = static_cast<int>(rotations.size());
    std::sort(rotations.begin(), rotations.end());
    for (int k = 0; k < nu; ++k)
        if (circ_dist(rotations[k], kTwoPi * k / nu) > 1e-8)
            throw Error(ErrorKind::NumericalFailure, "accepted rotations are not cyclic");
    if (reflections.empty()) return CompactGroup2::cyclic(nu);
    std::sort(reflections.begin(), reflections.end());
    const double offset = mod_positive(reflections.front(), kTwoPi / nu);
    const double frame = 0.5 * offset;
    if (frame < 1e-9 || kPi / nu - frame < 1e-9) return CompactGroup2::dihedral(nu);
    if (nu == 1 && std::abs(frame - 0.5 * kPi) < 1e-9) return CompactGroup2::dstar1();
    return CompactGroup2::dihedral(nu).with_frame(frame);
}

}  // namespace

CompactGroup2 domain_of_measure(const measures::SphericalMeasure& measure_in) {
    if (measure_in.sphere_dim() == 1) return CompactGroup2::cyclic(2);  // {+-1} stand-in
    const SphericalMeasure measure = measure_in.canonicalized();
    if (measure.variant() == measures::MeasureVariant::Constant) return CompactGroup2::o2();

    // Candidates are orthogonal, so the detected symmetry set of the measure
    // is closed under transposition and equals the field's domain group (the
    // spectral-side set is the transpose of the domain group).

    std::vector<double> rotations, reflections;
    auto push_unique = [](std::vector<double>& v, double x) {
        x = wrap_angle(x);
        for (double y : v)
            if (circ_dist(x, y) < 1e-9) return;
        v.push_back(x);
    };

    if (measure.variant() == measures::MeasureVariant::Atomic) {
        const auto& atoms = measure.atoms();
        const double base = atoms.front().angle;
        for (const auto& a : atoms) {
            const double delta = wrap_angle(a.angle - base);
            if (rotation_preserves_atoms(atoms, delta)) push_unique(rotations, delta);
            const double phi = wrap_angle(a.angle + base);
            if (reflection_preserves_atoms(atoms, phi)) push_unique(reflections, phi);
        }
    } else {
        const auto& bps = measure.breakpoints();
        const double base = bps.front();
        for (double b : bps) {
            const double delta = wrap_angle(b - base);
            if (rotation_preserves_arcs(measure, delta)) push_unique(rotations, delta);
            const double phi = wrap_angle(b + base);
            if (reflection_preserves_arcs(measure, phi)) push_unique(reflections, phi);
        }
    }
    return assemble_group(std::move(rotations), std::move(reflections));
}

CompactGroup2 domain_of_measure(const measures::PivotMeasure& measure) {
    return measures::scalar_measure_symmetry(measure);
}

// ---------------------------------------------------------------------------
// Pair admissibility
// ---------------------------------------------------------------------------

Admissibility validate_pair(const CompactGroup2& domain, const CompactGroup2& range) {
    if (!groups::is_maximal(domain))
        throw Error(ErrorKind::NotMaximal, "domain group must be maximal (SO(2) is not)");
    const bool minus_id = domain.contains_minus_identity();
    Admissibility out;
    using groups::GroupKind;
    const GroupKind rk = range.kind();
    if (rk == GroupKind::O2 || (rk == GroupKind::Dihedral && range.nu() == 2)) {
        out.admissible = minus_id;
        out.reason = out.admissible
                         ? "range O(2)/D_2 is compatible: -I is in the domain group"
                         : "range O(2)/D_2 requires -I in the domain group";
    } else if (rk == GroupKind::SO2) {
        out.admissible = !minus_id;
        out.reason = out.admissible ? "range SO(2) is compatible: -I is not in the domain group"
                                    : "range SO(2) requires -I not in the domain group";
    } else if (rk == GroupKind::Cyclic && range.nu() == 2) {
        out.admissible = true;
        out.reason = "range C_2 imposes no restriction";
    } else {
        throw Error(ErrorKind::InvalidInput,
                    "range group must be one of C_2, D_2, SO(2), O(2) up to conjugacy");
    }
    return out;
}

// ---------------------------------------------------------------------------
// Exponent sets and isotropy
// ---------------------------------------------------------------------------

ExponentSet domain_exponent_set(const OfbfSpec& spec, const CompactGroup2& domain) {
    ExponentSet out{spec.scaling.domain_exponent(), TangentSpace2{}};
    if (spec.m() == 2 && domain.kind() == groups::GroupKind::O2)
        out.tangent = groups::tangent_space(domain);
    return out;
}

ExponentSet range_exponent_set(const OfbfSpec& spec, const CompactGroup2& range) {
    ExponentSet out{spec.scaling.range_exponent(), TangentSpace2{}};
    if (spec.n() == 2 &&
        (range.kind() == groups::GroupKind::SO2 || range.kind() == groups::GroupKind::O2))
        out.tangent = groups::tangent_space(range);
    return out;
}

namespace {

// eta with eta*I in base + tangent, if it exists
std::optional<double> scalar_in_exponent_set(const ExponentSet& set) {
    const RealMatrix& base = set.base;
    if (base.rows() == 1) return base(0, 0);
    const double eta = 0.5 * base.trace();
    RealMatrix dev = base - RealMatrix::identity(2) * eta;
    if (!set.tangent.zero) {
        const RealMatrix j(2, 2, {0, -1, 1, 0});
        const RealMatrix gen = set.tangent.w * j * set.tangent.w.inverse();
        double num = 0, den = 0;
        for (int i = 0; i < 2; ++i)
            for (int k = 0; k < 2; ++k) {
                num += dev(i, k) * gen(i, k);
                den += gen(i, k) * gen(i, k);
            }
        if (den > 0) dev -= gen * (num / den);
    }
    if (dev.max_abs() <= 1e-9 * std::max(1.0, base.max_abs())) return eta;
    return std::nullopt;
}

bool rotation_invariant_sphere(const measures::SphericalMeasure& sph) {
    if (sph.sphere_dim() == 1) {
        // S^0: both atoms must carry the same (hence real) value
        const auto& atoms = sph.atoms();
        return atoms.size() == 2 && values_equal(atoms[0].value, atoms[1].value);
    }
    return sph.canonicalized().variant() == measures::MeasureVariant::Constant;
}

}  // namespace

IsotropyCertificate isotropy_check(const OfbfSpec& spec, const CompactGroup2& domain) {
    IsotropyCertificate cert;
    const ExponentSet dom_set = domain_exponent_set(spec, domain);
    const auto eta = scalar_in_exponent_set(dom_set);
    const bool sphere_ok = rotation_invariant_sphere(spec.spherical);
    cert.isotropic = eta.has_value() && sphere_ok;
    if (cert.isotropic) {
        cert.eta = *eta;
        cert.note = "scalar exponent eta*I admissible and spherical component rotation-invariant; "
                    "the spectral measure is absolutely continuous";
    } else if (!eta.has_value()) {
        cert.note = "no scalar exponent eta*I in the domain exponent set";
    } else {
        cert.note = "spherical component is not rotation-invariant";
    }
    return cert;
}

IsotropyCertificate isotropy_check(const OfbfSpec& spec) {
    const CompactGroup2 domain = domain_of_measure(spec.spherical);
    return isotropy_check(spec, domain);
}

// ---------------------------------------------------------------------------
// Full classification
// ---------------------------------------------------------------------------

SymmetryReport classify(const OfbfSpec& spec) {
    SymmetryReport rep;
    rep.domain_group = domain_of_measure(spec.spherical);
    rep.range_group = (spec.n() == 2) ? range_group(spec) : CompactGroup2::cyclic(2);
    rep.domain_exponents = domain_exponent_set(spec, rep.domain_group);
    rep.range_exponents = range_exponent_set(spec, rep.range_group);
    rep.isotropy = isotropy_check(spec, rep.domain_group);
    if (spec.m() == 2 && spec.n() == 2) {
        rep.admissible = validate_pair(rep.domain_group, rep.range_group).admissible;
    } else {
        rep.admissible = true;  // (m,1) and (1,n) pairs carry no extra restriction here
    }
    return rep;
}

double covariance_invariance_deviation(const OfbfSpec& spec, const RealMatrix& element,
                                       bool domain_side, const spectral::QuadratureConfig& cfg) {
    static const std::vector<std::pair<Vec2, Vec2>> probes = {
        {{1.0, 0.3}, {0.4, -0.9}}, {{0.7, 0.7}, {-0.2, 1.1}}, {{1.5, -0.4}, {0.9, 0.5}},
        {{-0.6, 1.2}, {1.0, 1.0}}, {{0.3, -1.4}, {-1.1, 0.2}},
    };
    double worst = 0;
    for (const auto& [t1, t2] : probes) {
        const RealMatrix base = spectral::covariance(spec, t1, t2, cfg);
        RealMatrix other;
        if (domain_side) {
            other = spectral::covariance(spec, apply(element, t1), apply(element, t2), cfg);
        } else {
            other = element * base * element.transpose();
        }
        const double scale = std::max(1e-300, base.frobenius());
        worst = std::max(worst, (other - base).frobenius() / scale);
    }
    return worst;
}

}  // namespace ofbf::symmetry
