#include "ofbf/measures.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ofbf::measures {

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

bool values_equal(const HermitianMatrix& a, const HermitianMatrix& b, double tol = 1e-10) {
    const double scale = std::max({1.0, a.matrix().frobenius(), b.matrix().frobenius()});
    return (a.matrix() - b.matrix()).frobenius() <= tol * scale;
}

HermitianMatrix conj_value(const HermitianMatrix& v) {
    return HermitianMatrix(v.matrix().conj());
}

}  // namespace

double antipode_angle(int m, double theta) {
    if (m == 1) return -theta;
    return wrap_angle(theta + kPi);
}

bool same_angle(double a, double b, double tol) { return circ_dist(a, b) < tol; }

// ---------------------------------------------------------------------------
// Pivot measures
// ---------------------------------------------------------------------------

std::vector<ScalarAtom> PivotMeasure::atoms() const {
    std::vector<ScalarAtom> out;
    for (const auto& orbit : orbit_atoms) out.insert(out.end(), orbit.begin(), orbit.end());
    std::sort(out.begin(), out.end(),
              [](const ScalarAtom& a, const ScalarAtom& b) { return a.angle < b.angle; });
    return out;
}

PivotMeasure pivot_measure(const CompactGroup2& group, const std::vector<Vec2>& pivots) {
    if (!group.finite()) throw Error(ErrorKind::NotFinite, "pivot measures need a finite group");
    if (!groups::is_maximal(group))
        throw Error(ErrorKind::NotMaximal, "pivot measures need a maximal group");
    if (!group.conjugacy_is_identity(1e-12))
        throw Error(ErrorKind::InvalidInput, "pivot measures are built on the Euclidean circle (W = I)");
    if (pivots.empty()) throw Error(ErrorKind::InvalidInput, "at least one pivot required");

    PivotMeasure pm;
    pm.group = group;
    pm.pivots = pivots;
    std::vector<groups::OrbitDesc> orbits;
    for (const auto& p : pivots) orbits.push_back(groups::orbit(group, p));
    for (size_t i = 0; i < orbits.size(); ++i)
        for (size_t j = i + 1; j < orbits.size(); ++j)
            for (const auto& a : orbits[i].points)
                for (const auto& b : orbits[j].points)
                    if (circ_dist(a.angle(), b.angle()) < 1e-9)
                        throw Error(ErrorKind::DuplicateOrbit,
                                    "pivot orbits intersect, hence coincide");
    for (size_t j = 0; j < orbits.size(); ++j) {
        const double total = static_cast<double>(j + 1);
        const double mass = total / orbits[j].points.size();
        std::vector<ScalarAtom> atoms;
        for (const auto& p : orbits[j].points) atoms.push_back({p.angle(), mass});
        pm.orbit_atoms.push_back(std::move(atoms));
    }
    return pm;
}

// ---------------------------------------------------------------------------
// Symmetry of a scalar atomic measure
// ---------------------------------------------------------------------------

namespace {

struct FlatAtom {
    double angle;
    double mass;
};

bool atoms_match(const std::vector<FlatAtom>& atoms, double image_angle, double mass) {
    for (const auto& a : atoms)
        if (circ_dist(a.angle, image_angle) < 1e-9 && std::abs(a.mass - mass) < 1e-12) return true;
    return false;
}

bool rotation_preserves(const std::vector<FlatAtom>& atoms, double delta) {
    for (const auto& a : atoms)
        if (!atoms_match(atoms, a.angle + delta, a.mass)) return false;
    return true;
}

bool reflection_preserves(const std::vector<FlatAtom>& atoms, double phi) {
    for (const auto& a : atoms)
        if (!atoms_match(atoms, phi - a.angle, a.mass)) return false;
    return true;
}

}  // namespace

CompactGroup2 scalar_measure_symmetry(const PivotMeasure& measure) {
    std::vector<FlatAtom> atoms;
    for (const auto& a : measure.atoms()) atoms.push_back({a.angle, a.mass});
    if (atoms.empty()) throw Error(ErrorKind::InvalidInput, "empty measure");

    const double base = atoms.front().angle;
    std::vector<double> rotations;
    for (const auto& a : atoms) {
        const double delta = wrap_angle(a.angle - base);
        bool dup = false;
        for (double d : rotations) dup = dup || circ_dist(d, delta) < 1e-9;
        if (!dup && rotation_preserves(atoms, delta)) rotations.push_back(delta);
    }
    std::vector<double> reflections;
    for (const auto& a : atoms) {
        const double phi = wrap_angle(a.angle + base);
        bool dup = false;
        for (double p : reflections) dup = dup || circ_dist(p, phi) < 1e-9;
        if (!dup && reflection_preserves(atoms, phi)) reflections.push_back(phi);
    }

    const int nu = static_cast<int>(rotations.size());
    std::sort(rotations.begin(), rotations.end());
    for (int k = 0; k < nu; ++k)
        if (circ_dist(rotations[k], kTwoPi * k / nu) > 1e-8)
            throw Error(ErrorKind::NumericalFailure, "detected rotations are not a cyclic set");
    if (reflections.empty()) return CompactGroup2::cyclic(nu);

    std::sort(reflections.begin(), reflections.end());
    const double offset = std::fmod(reflections.front(), kTwoPi / nu);
    const double frame = 0.5 * offset;
    if (frame < 1e-9 || kPi / nu - frame < 1e-9) return CompactGroup2::dihedral(nu);
    if (nu == 1 && std::abs(frame - 0.5 * kPi) < 1e-9) return CompactGroup2::dstar1();
    return CompactGroup2::dihedral(nu).with_frame(frame);
}

// ---------------------------------------------------------------------------
// Pivot extension
// ---------------------------------------------------------------------------

namespace {

bool spans_plane(const PivotMeasure& pm) {
    std::vector<Vec2> pts;
    for (const auto& orbit : pm.orbit_atoms)
        for (const auto& a : orbit) pts.push_back(unit_vec(a.angle));
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j)
            if (std::abs(pts[i].x * pts[j].y - pts[i].y * pts[j].x) > 1e-9) return true;
    return false;
}

bool orbit_hits(const CompactGroup2& g, const Vec2& x, double target_angle, double tol) {
    for (const auto& p : groups::orbit(g, x).points)
        if (circ_dist(p.angle(), target_angle) < tol) return true;
    return false;
}

}  // namespace

PivotMeasure extend_pivots_until_symmetry(const CompactGroup2& group, std::vector<Vec2> seeds) {
    if (!group.finite()) throw Error(ErrorKind::NotFinite, "finite group required");
    const bool minus_id = group.contains_minus_identity();

    std::vector<Vec2> pivots;
    auto orbit_distinct = [&](const Vec2& x) {
        for (const auto& p : pivots)
            if (orbit_hits(group, p, x.angle(), 1e-6)) return false;
        return true;
    };
    for (const auto& s : seeds)
        if (orbit_distinct(s)) pivots.push_back(s);

    // deterministic low-discrepancy candidate angles
    const double golden = 0.61803398874989484820;
    int next_candidate = 1;
    auto next_pivot = [&]() -> Vec2 {
        for (; next_candidate < 4096; ++next_candidate) {
            const double t = std::fmod(0.1234567 + golden * next_candidate, 1.0);
            const Vec2 x = unit_vec(t * kTwoPi);
            if (!orbit_distinct(x)) continue;
            if (!minus_id && orbit_hits(group, x, antipode_angle(2, x.angle()), 1e-6)) continue;
            bool on_axis = false;
            for (double phi : group.has_reflections() ? group.reflection_angles()
                                                      : std::vector<double>{})
                if (circ_dist(x.angle(), 0.5 * phi) < 1e-6 ||
                    circ_dist(x.angle(), 0.5 * phi + kPi) < 1e-6)
                    on_axis = true;
            if (on_axis) continue;
            ++next_candidate;
            return x;
        }
        throw Error(ErrorKind::ConstructionFailure, "no admissible pivot candidates left");
    };

    for (int iteration = 0; iteration < 8; ++iteration) {
        if (pivots.empty()) {
            pivots.push_back(next_pivot());
        }
        PivotMeasure pm = pivot_measure(group, pivots);
        const CompactGroup2 sym = scalar_measure_symmetry(pm);
        if (groups::same_group(sym, group) && spans_plane(pm)) return pm;
        if (static_cast<int>(pivots.size()) >= 8) break;
        pivots.push_back(next_pivot());
    }
    PivotMeasure pm = pivot_measure(group, pivots);
    throw Error(ErrorKind::ConstructionFailure,
                "pivot extension did not reach the requested symmetry; residual group " +
                    groups::describe(scalar_measure_symmetry(pm)));
}

// ---------------------------------------------------------------------------
// SphericalMeasure
// ---------------------------------------------------------------------------

namespace {

void check_value(const HermitianMatrix& v, int n) {
    if (v.dim() != n) throw Error(ErrorKind::InvalidInput, "inconsistent value dimension");
    if (!v.psd(1e-10)) throw Error(ErrorKind::InvalidInput, "measure values must be PSD");
}

}  // namespace

SphericalMeasure SphericalMeasure::atomic(int m, int n, std::vector<MatrixAtom> atoms) {
    if (m != 1 && m != 2) throw Error(ErrorKind::UnsupportedDimension, "m must be 1 or 2");
    if (atoms.empty()) throw Error(ErrorKind::InvalidInput, "empty atom list");
    SphericalMeasure s;
    s.variant_ = MeasureVariant::Atomic;
    s.m_ = m;
    s.n_ = n;
    for (auto& a : atoms) {
        check_value(a.value, n);
        if (m == 1) {
            if (std::abs(std::abs(a.angle) - 1.0) > 1e-12)
                throw Error(ErrorKind::InvalidInput, "m=1 atoms live on S^0 = {+1,-1}");
            a.angle = a.angle > 0 ? 1.0 : -1.0;
        } else {
            a.angle = wrap_angle(a.angle);
        }
    }
    std::sort(atoms.begin(), atoms.end(),
              [](const MatrixAtom& a, const MatrixAtom& b) { return a.angle < b.angle; });
    // merge atoms within 1e-10 angular tolerance
    for (const auto& a : atoms) {
        if (!s.atoms_.empty() && same_angle(s.atoms_.back().angle, a.angle)) {
            s.atoms_.back().value = s.atoms_.back().value + a.value;
        } else {
            s.atoms_.push_back(a);
        }
    }
    // Hermitian symmetry: the atom at the antipode carries the conjugate value
    for (const auto& a : s.atoms_) {
        const double anti = antipode_angle(m, a.angle);
        bool found = false;
        for (const auto& b : s.atoms_)
            if (same_angle(b.angle, anti) && values_equal(b.value, conj_value(a.value))) found = true;
        if (!found)
            throw Error(ErrorKind::InvalidInput,
                        "Hermitian symmetry violated: missing conjugate atom at the antipode");
    }
    return s;
}

SphericalMeasure SphericalMeasure::piecewise(int n, std::vector<double> breakpoints,
                                             std::vector<HermitianMatrix> values) {
    if (breakpoints.size() < 2 || breakpoints.size() != values.size())
        throw Error(ErrorKind::InvalidInput, "piecewise measure needs matching breakpoints/values");
    SphericalMeasure s;
    s.variant_ = MeasureVariant::PiecewiseConstant;
    s.m_ = 2;
    s.n_ = n;
    for (auto& b : breakpoints) b = wrap_angle(b);
    std::vector<size_t> order(breakpoints.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](size_t i, size_t j) { return breakpoints[i] < breakpoints[j]; });
    for (size_t i : order) {
        check_value(values[i], n);
        s.breakpoints_.push_back(breakpoints[i]);
        s.values_.push_back(values[i]);
    }
    for (size_t i = 1; i < s.breakpoints_.size(); ++i)
        if (s.breakpoints_[i] - s.breakpoints_[i - 1] < 1e-12)
            throw Error(ErrorKind::InvalidInput, "duplicate breakpoints");
    // Hermitian symmetry arc-by-arc at midpoints
    for (size_t i = 0; i < s.breakpoints_.size(); ++i) {
        const double a = s.breakpoints_[i];
        const double b = (i + 1 < s.breakpoints_.size()) ? s.breakpoints_[i + 1]
                                                         : s.breakpoints_.front() + kTwoPi;
        const double mid = 0.5 * (a + b);
        if (!values_equal(s.value_at(antipode_angle(2, mid)), conj_value(s.values_[i])))
            throw Error(ErrorKind::InvalidInput,
                        "Hermitian symmetry violated: antipodal arc is not the conjugate");
    }
    return s;
}

SphericalMeasure SphericalMeasure::constant(int n, const HermitianMatrix& value) {
    check_value(value, n);
    if (!value.is_real())
        throw Error(ErrorKind::InvalidInput,
                            "a rotation-invariant spherical value must be real (Hermitian symmetry)");
    SphericalMeasure s;
    s.variant_ = MeasureVariant::Constant;
    s.m_ = 2;
    s.n_ = n;
    s.values_.push_back(value);
    return s;
}

const HermitianMatrix& SphericalMeasure::value_at(double theta) const {
    if (variant_ == MeasureVariant::Constant) return values_.front();
    if (variant_ != MeasureVariant::PiecewiseConstant)
        throw Error(ErrorKind::InvalidInput, "value_at applies to densities");
    const double t = wrap_angle(theta);
    // arcs wrap: [bp[last], bp[0] + 2pi)
    size_t idx = breakpoints_.size() - 1;
    for (size_t i = 0; i + 1 < breakpoints_.size(); ++i)
        if (t >= breakpoints_[i] && t < breakpoints_[i + 1]) { idx = i; break; }
    if (t < breakpoints_.front()) idx = breakpoints_.size() - 1;
    return values_[idx];
}

HermitianMatrix SphericalMeasure::total() const {
    if (variant_ == MeasureVariant::Constant) return values_.front().scaled(kTwoPi);
    if (variant_ == MeasureVariant::Atomic) {
        HermitianMatrix acc = HermitianMatrix::zero(n_);
        for (const auto& a : atoms_) acc = acc + a.value;
        return acc;
    }
    HermitianMatrix acc = HermitianMatrix::zero(n_);
    for (size_t i = 0; i < breakpoints_.size(); ++i) {
        const double a = breakpoints_[i];
        const double b =
            (i + 1 < breakpoints_.size()) ? breakpoints_[i + 1] : breakpoints_.front() + kTwoPi;
        acc = acc + values_[i].scaled(b - a);
    }
    return acc;
}

SphericalMeasure SphericalMeasure::canonicalized() const {
    if (variant_ != MeasureVariant::PiecewiseConstant) return *this;
    bool all_equal = true;
    for (const auto& v : values_) all_equal = all_equal && values_equal(v, values_.front());
    if (all_equal && values_.front().is_real()) return constant(n_, values_.front());

    std::vector<double> bps;
    std::vector<HermitianMatrix> vals;
    for (size_t i = 0; i < breakpoints_.size(); ++i) {
        if (!vals.empty() && values_equal(vals.back(), values_[i])) continue;
        bps.push_back(breakpoints_[i]);
        vals.push_back(values_[i]);
    }
    // wrap-around merge
    while (bps.size() > 1 && values_equal(vals.front(), vals.back())) {
        bps.erase(bps.begin());
        vals.erase(vals.begin());
    }
    if (bps.size() < 2) return *this;
    return piecewise(n_, bps, vals);
}

// ---------------------------------------------------------------------------
// Hermitian lift
// ---------------------------------------------------------------------------

SphericalMeasure xi_lift_gram(const PivotMeasure& lambda, const HermitianMatrix& aastar) {
    const int n = aastar.dim();
    if (!HermitianMatrix(aastar.real()).pd(1e-12))
        throw Error(ErrorKind::IncompatibleSpec, "Re(AA*) must be positive definite");
    const bool minus_id = lambda.group.contains_minus_identity();
    if (minus_id && !aastar.is_real())
        throw Error(ErrorKind::IncompatibleSpec,
                    "-I in the group forces a real spherical parameter (Im AA* = 0)");
    // A real parameter with a -I-free group is allowed mechanically; the
    // lifted measure then gains -I as a symmetry, which the construction
    // round-trips detect when it matters.
    if (!minus_id) {
        for (const auto& p : lambda.pivots)
            if (orbit_hits(lambda.group, p, antipode_angle(2, p.angle()), 1e-9))
                throw Error(ErrorKind::PivotOnAntipode,
                            "pivot orbit contains its antipode; choose pivots away from the "
                            "antipodal points of the group");
    }

    const auto lam_atoms = lambda.atoms();
    auto mass_at = [&](double angle) {
        for (const auto& a : lam_atoms)
            if (same_angle(a.angle, angle, 1e-9)) return a.mass;
        return 0.0;
    };
    std::vector<double> positions;
    auto add_pos = [&](double a) {
        for (double p : positions)
            if (same_angle(p, a, 1e-9)) return;
        positions.push_back(a);
    };
    for (const auto& a : lam_atoms) {
        add_pos(a.angle);
        add_pos(antipode_angle(2, a.angle));
    }

    const ComplexMatrix v = aastar.matrix();
    const ComplexMatrix vc = v.conj();
    std::vector<MatrixAtom> atoms;
    for (double pos : positions) {
        const double m1 = mass_at(pos);
        const double m2 = mass_at(antipode_angle(2, pos));
        ComplexMatrix val = v * Complex(m1, 0) + vc * Complex(m2, 0);
        atoms.push_back({pos, HermitianMatrix(val)});
    }
    return SphericalMeasure::atomic(2, n, std::move(atoms));
}

SphericalMeasure xi_lift(const PivotMeasure& lambda, const ComplexMatrix& a) {
    if (a.rows() != a.cols()) throw Error(ErrorKind::InvalidInput, "A must be square");
    const HermitianMatrix gram = HermitianMatrix::gram(a);
    if (!gram.pd(1e-12)) throw Error(ErrorKind::IncompatibleSpec, "A must be full rank");
    // a genuinely complex A must contribute a nonzero imaginary part when the
    // group lacks -I, otherwise the lift silently loses the asymmetry
    const bool a_complex = a.imag().max_abs() > 1e-14 * std::max(1.0, a.frobenius());
    if (!lambda.group.contains_minus_identity() && a_complex && gram.is_real())
        throw Error(ErrorKind::IncompatibleSpec,
                    "A2 A1* - A1 A2* vanishes: the lift needs Im(AA*) != 0 for a group without -I");
    return xi_lift_gram(lambda, gram);
}

// ---------------------------------------------------------------------------
// Slice densities
// ---------------------------------------------------------------------------

namespace {

bool proportional_real(const HermitianMatrix& a, const HermitianMatrix& b, double& c) {
    const double ta = a.real().trace(), tb = b.real().trace();
    if (std::abs(ta) < 1e-300) return false;
    c = tb / ta;
    return (b.real() - a.real() * c).max_abs() <= 1e-10 * std::max(1.0, b.real().max_abs());
}

}  // namespace

SphericalMeasure dihedral_slices(int nu, const HermitianMatrix& delta1,
                                 const HermitianMatrix& delta2) {
    if (nu < 1 || nu > groups::kMaxOrder) throw Error(ErrorKind::InvalidInput, "invalid nu");
    const int n = delta1.dim();
    if (delta2.dim() != n) throw Error(ErrorKind::InvalidInput, "value dimension mismatch");
    if (!HermitianMatrix(delta1.real()).pd(1e-12))
        throw Error(ErrorKind::IncompatibleSpec, "Re(delta1) must be positive definite");

    if (nu % 2 == 1) {
        if (delta1.is_real())
            throw Error(ErrorKind::IncompatibleSpec, "odd nu requires Im(delta1) != 0");
        if (!values_equal(delta2, conj_value(delta1), 1e-12))
            throw Error(ErrorKind::IncompatibleSpec, "odd nu requires delta2 = conj(delta1)");
    } else {
        if (!delta1.is_real() || !delta2.is_real())
            throw Error(ErrorKind::IncompatibleSpec, "even nu requires real values");
        double c = 0;
        if (!proportional_real(delta1, delta2, c) || std::abs(c) < 1e-10 ||
            std::abs(c - 1.0) < 1e-10)
            throw Error(ErrorKind::IncompatibleSpec,
                        "even nu requires Re(delta2) = c Re(delta1) with c not in {0, 1}");
    }

    const int arcs = 4 * nu;
    std::vector<double> bps(arcs);
    std::vector<HermitianMatrix> vals;
    vals.reserve(arcs);
    for (int i = 0; i < arcs; ++i) {
        bps[i] = kTwoPi * i / arcs;
        const int quarter = i % 4;
        vals.push_back((quarter == 1 || quarter == 2) ? delta1 : delta2);
    }
    return SphericalMeasure::piecewise(n, bps, vals);
}

SphericalMeasure cyclic_slices(int nu, const HermitianMatrix& d1, const HermitianMatrix& d2,
                               const HermitianMatrix& d3, const HermitianMatrix& d4) {
    if (nu < 1 || nu > groups::kMaxOrder) throw Error(ErrorKind::InvalidInput, "invalid nu");
    const int n = d1.dim();
    for (const auto* d : {&d2, &d3, &d4})
        if (d->dim() != n) throw Error(ErrorKind::InvalidInput, "value dimension mismatch");
    for (const auto* d : {&d1, &d2, &d3, &d4})
        if (!HermitianMatrix(d->real()).pd(1e-12))
            throw Error(ErrorKind::IncompatibleSpec, "all real parts must be positive definite");

    const double scale = std::max(1.0, d1.matrix().frobenius());
    if (nu % 2 == 1) {
        if (d1.is_real() || d2.is_real())
            throw Error(ErrorKind::IncompatibleSpec,
                        "odd nu requires nonzero imaginary parts (all four values distinct)");
        if (!values_equal(d3, conj_value(d1), 1e-12) || !values_equal(d4, conj_value(d2), 1e-12))
            throw Error(ErrorKind::IncompatibleSpec,
                        "odd nu requires delta3 = conj(delta1) and delta4 = conj(delta2)");
        if ((d1.real() - d2.real()).max_abs() <= 1e-10 * scale)
            throw Error(ErrorKind::IncompatibleSpec, "odd nu requires Re(delta1) != Re(delta2)");
    } else {
        for (const auto* d : {&d1, &d2, &d3, &d4})
            if (!d->is_real())
                throw Error(ErrorKind::IncompatibleSpec, "even nu requires real values");
        const HermitianMatrix* ds[4] = {&d1, &d2, &d3, &d4};
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                if ((ds[i]->real() - ds[j]->real()).max_abs() <= 1e-10 * scale)
                    throw Error(ErrorKind::IncompatibleSpec,
                                "even nu requires four pairwise-distinct real values");
    }

    const int arcs = 4 * nu;
    std::vector<double> bps(arcs);
    std::vector<HermitianMatrix> vals;
    vals.reserve(arcs);
    const HermitianMatrix* cycle[4] = {&d1, &d2, &d3, &d4};
    for (int i = 0; i < arcs; ++i) {
        bps[i] = kTwoPi * i / arcs;
        vals.push_back(*cycle[i % 4]);
    }
    return SphericalMeasure::piecewise(n, bps, vals);
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

ValidationReport validate(const SphericalMeasure& measure) {
    ValidationReport rep;
    std::ostringstream detail;
    const int m = measure.sphere_dim();

    // (a) Hermitian symmetry
    rep.hermitian_symmetry = true;
    if (measure.variant() == MeasureVariant::Atomic) {
        for (const auto& a : measure.atoms()) {
            bool ok = false;
            for (const auto& b : measure.atoms())
                if (same_angle(b.angle, antipode_angle(m, a.angle)) &&
                    values_equal(b.value, conj_value(a.value)))
                    ok = true;
            if (!ok) {
                rep.hermitian_symmetry = false;
                detail << "atom at " << a.angle << " lacks a conjugate antipode; ";
            }
        }
    } else if (measure.variant() == MeasureVariant::PiecewiseConstant) {
        const auto& bps = measure.breakpoints();
        for (size_t i = 0; i < bps.size(); ++i) {
            const double a = bps[i];
            const double b = (i + 1 < bps.size()) ? bps[i + 1] : bps.front() + kTwoPi;
            const double mid = 0.5 * (a + b);
            if (!values_equal(measure.value_at(antipode_angle(2, mid)),
                              conj_value(measure.values()[i]))) {
                rep.hermitian_symmetry = false;
                detail << "arc " << i << " violates Hermitian symmetry; ";
            }
        }
    } else {
        rep.hermitian_symmetry = measure.constant_value().is_real();
        if (!rep.hermitian_symmetry) detail << "constant value must be real; ";
    }

    // (b) full rank on support: a nonzero value must be positive definite
    rep.full_rank_on_support = true;
    auto check_rank = [&](const HermitianMatrix& v, const char* what, size_t idx) {
        if (v.max_eig() > 1e-14 && v.min_eig() <= 1e-9 * v.max_eig()) {
            rep.full_rank_on_support = false;
            detail << what << " " << idx << " is rank-deficient on support; ";
        }
    };
    if (measure.variant() == MeasureVariant::Atomic) {
        for (size_t i = 0; i < measure.atoms().size(); ++i)
            check_rank(measure.atoms()[i].value, "atom", i);
    } else if (measure.variant() == MeasureVariant::PiecewiseConstant) {
        for (size_t i = 0; i < measure.values().size(); ++i)
            check_rank(measure.values()[i], "arc", i);
    } else {
        check_rank(measure.constant_value(), "constant", 0);
    }

    // (c) support directions with PD real part spanning R^m
    if (m == 1) {
        rep.span = false;
        if (measure.variant() == MeasureVariant::Atomic)
            for (const auto& a : measure.atoms())
                if (HermitianMatrix(a.value.real()).pd(1e-12)) rep.span = true;
        if (!rep.span) detail << "no PD direction on S^0; ";
    } else {
        std::vector<double> dirs;
        if (measure.variant() == MeasureVariant::Atomic) {
            for (const auto& a : measure.atoms())
                if (HermitianMatrix(a.value.real()).pd(1e-12)) dirs.push_back(a.angle);
            rep.span = false;
            for (size_t i = 0; i < dirs.size() && !rep.span; ++i)
                for (size_t j = i + 1; j < dirs.size(); ++j) {
                    const double d = circ_dist(dirs[i], dirs[j]);
                    if (d > 1e-9 && std::abs(d - kPi) > 1e-9) { rep.span = true; break; }
                }
            if (!rep.span) detail << "PD atoms do not span the plane; ";
        } else if (measure.variant() == MeasureVariant::PiecewiseConstant) {
            rep.span = false;
            const auto& bps = measure.breakpoints();
            for (size_t i = 0; i < measure.values().size(); ++i) {
                const double a = bps[i];
                const double b = (i + 1 < bps.size()) ? bps[i + 1] : bps.front() + kTwoPi;
                if (b - a > 1e-9 && HermitianMatrix(measure.values()[i].real()).pd(1e-12))
                    rep.span = true;
            }
            if (!rep.span) detail << "no PD arc of positive width; ";
        } else {
            rep.span = HermitianMatrix(measure.constant_value().real()).pd(1e-12);
            if (!rep.span) detail << "constant value is not PD; ";
        }
    }
    rep.detail = detail.str();
    return rep;
}

}  // namespace ofbf::measures
