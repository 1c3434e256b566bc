#include "ofbf/groups.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace ofbf {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

double Vec2::norm() const { return std::hypot(x, y); }

double Vec2::angle() const {
    double a = std::atan2(y, x);
    if (a < 0) a += kTwoPi;
    return a;
}

Vec2 unit_vec(double angle) { return {std::cos(angle), std::sin(angle)}; }

Vec2 apply(const RealMatrix& m, const Vec2& v) {
    return {m(0, 0) * v.x + m(0, 1) * v.y, m(1, 0) * v.x + m(1, 1) * v.y};
}

namespace groups {

// ---------------------------------------------------------------------------
// Rational turns
// ---------------------------------------------------------------------------

Rational::Rational(std::int64_t n, std::int64_t d) {
    if (d == 0) throw Error(ErrorKind::InvalidInput, "zero denominator");
    if (d < 0) { n = -n; d = -d; }
    n %= d;
    if (n < 0) n += d;
    const std::int64_t g = std::gcd(n, d);
    num = n / (g ? g : 1);
    den = d / (g ? g : 1);
    if (num == 0) den = 1;
}

double Rational::radians() const { return kTwoPi * turns(); }

Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
}

Rational operator-(const Rational& a, const Rational& b) {
    return Rational(a.num * b.den - b.num * a.den, a.den * b.den);
}

Rational Rational::negated() const { return Rational(-num, den); }

bool operator<(const Rational& a, const Rational& b) {
    return a.num * b.den < b.num * a.den;
}

// ---------------------------------------------------------------------------
// Group elements
// ---------------------------------------------------------------------------

// Composition rules for O_a, F_a (angles as turns):
//   O_a O_b = O_{a+b},  O_a F_b = F_{a+b},  F_a O_b = F_{a-b},  F_a F_b = O_{a-b}
GroupElement2 operator*(const GroupElement2& a, const GroupElement2& b) {
    if (!a.reflection && !b.reflection) return GroupElement2::rotation(a.turn + b.turn);
    if (!a.reflection && b.reflection) return GroupElement2::reflection_at(a.turn + b.turn);
    if (a.reflection && !b.reflection) return GroupElement2::reflection_at(a.turn - b.turn);
    return GroupElement2::rotation(a.turn - b.turn);
}

GroupElement2 GroupElement2::inverse() const {
    if (reflection) return *this;
    return GroupElement2::rotation(turn.negated());
}

bool operator<(const GroupElement2& a, const GroupElement2& b) {
    if (a.reflection != b.reflection) return !a.reflection;
    return a.turn < b.turn;
}

RealMatrix element_matrix(const GroupElement2& g) {
    const double th = g.turn.radians();
    const double c = std::cos(th), s = std::sin(th);
    if (g.reflection) return RealMatrix(2, 2, {c, s, s, -c});
    return RealMatrix(2, 2, {c, -s, s, c});
}

// ---------------------------------------------------------------------------
// CompactGroup2
// ---------------------------------------------------------------------------

CompactGroup2 CompactGroup2::cyclic(int nu) {
    if (nu < 1 || nu > kMaxOrder)
        throw Error(ErrorKind::InvalidInput, "cyclic order out of range");
    return CompactGroup2(GroupKind::Cyclic, nu);
}

CompactGroup2 CompactGroup2::dihedral(int nu) {
    if (nu < 1 || nu > kMaxOrder)
        throw Error(ErrorKind::InvalidInput, "dihedral order out of range");
    return CompactGroup2(GroupKind::Dihedral, nu);
}

CompactGroup2 CompactGroup2::dstar1() { return CompactGroup2(GroupKind::DStar1, 1); }
CompactGroup2 CompactGroup2::so2() { return CompactGroup2(GroupKind::SO2, 0); }
CompactGroup2 CompactGroup2::o2() { return CompactGroup2(GroupKind::O2, 0); }

CompactGroup2 CompactGroup2::explicit_finite(std::vector<GroupElement2> elements) {
    if (elements.empty() || elements.size() > 2 * kMaxOrder)
        throw Error(ErrorKind::InvalidInput, "explicit group size out of range");
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    auto contains = [&](const GroupElement2& e) {
        return std::binary_search(elements.begin(), elements.end(), e);
    };
    if (!contains(GroupElement2::rotation(Rational(0, 1))))
        throw Error(ErrorKind::InvalidInput, "explicit group must contain the identity");
    for (const auto& a : elements) {
        if (!contains(a.inverse()))
            throw Error(ErrorKind::InvalidInput, "explicit group not closed under inverse");
        for (const auto& b : elements)
            if (!contains(a * b))
                throw Error(ErrorKind::InvalidInput, "explicit group not closed under composition");
    }
    CompactGroup2 g(GroupKind::ExplicitFinite, 0);
    g.elements_ = std::move(elements);
    return g;
}

CompactGroup2 CompactGroup2::with_conjugacy(const RealMatrix& w) const {
    HermitianMatrix check(w);  // validates symmetry
    if (!check.pd(1e-12)) throw Error(ErrorKind::InvalidInput, "conjugacy must be positive definite");
    CompactGroup2 g = *this;
    g.w_ = det_normalized(w);
    g.w_identity_ = (g.w_ - RealMatrix::identity(2)).max_abs() < 1e-14;
    return g;
}

CompactGroup2 CompactGroup2::with_frame(double frame) const {
    CompactGroup2 g = *this;
    g.frame_ = frame;
    // cyclic groups and SO(2)/O(2) commute with rotations: frame is vacuous
    if (kind_ == GroupKind::Cyclic || kind_ == GroupKind::SO2 || kind_ == GroupKind::O2)
        g.frame_ = 0.0;
    return g;
}

int CompactGroup2::order() const {
    switch (kind_) {
        case GroupKind::Cyclic: return nu_;
        case GroupKind::Dihedral: return 2 * nu_;
        case GroupKind::DStar1: return 2;
        case GroupKind::ExplicitFinite: return static_cast<int>(elements_.size());
        default: throw Error(ErrorKind::NotFinite, "group is not finite");
    }
}

bool CompactGroup2::contains_minus_identity() const {
    switch (kind_) {
        case GroupKind::Cyclic:
        case GroupKind::Dihedral: return nu_ % 2 == 0;
        case GroupKind::DStar1: return false;
        case GroupKind::SO2:
        case GroupKind::O2: return true;
        case GroupKind::ExplicitFinite: {
            const GroupElement2 mi = GroupElement2::rotation(Rational(1, 2));
            return std::find(elements_.begin(), elements_.end(), mi) != elements_.end();
        }
    }
    return false;
}

bool CompactGroup2::has_reflections() const {
    switch (kind_) {
        case GroupKind::Cyclic:
        case GroupKind::SO2: return false;
        case GroupKind::Dihedral:
        case GroupKind::DStar1:
        case GroupKind::O2: return true;
        case GroupKind::ExplicitFinite:
            return std::any_of(elements_.begin(), elements_.end(),
                               [](const GroupElement2& e) { return e.reflection; });
    }
    return false;
}

bool CompactGroup2::conjugacy_is_identity(double tol) const {
    return (w_ - RealMatrix::identity(2)).max_abs() <= tol;
}

std::vector<GroupElement2> CompactGroup2::enumerate() const {
    std::vector<GroupElement2> out;
    switch (kind_) {
        case GroupKind::Cyclic:
            for (int k = 0; k < nu_; ++k) out.push_back(GroupElement2::rotation(Rational(k, nu_)));
            break;
        case GroupKind::Dihedral:
            for (int k = 0; k < nu_; ++k) out.push_back(GroupElement2::rotation(Rational(k, nu_)));
            for (int k = 0; k < nu_; ++k)
                out.push_back(GroupElement2::reflection_at(Rational(k, nu_)));
            break;
        case GroupKind::DStar1:
            out.push_back(GroupElement2::rotation(Rational(0, 1)));
            out.push_back(GroupElement2::reflection_at(Rational(1, 2)));
            break;
        case GroupKind::ExplicitFinite:
            out = elements_;
            break;
        default:
            throw Error(ErrorKind::NotFinite, "cannot enumerate an infinite group");
    }
    std::sort(out.begin(), out.end());
    return out;
}

RealMatrix CompactGroup2::materialize(const GroupElement2& g) const {
    RealMatrix m = element_matrix(g);
    if (frame_ != 0.0) {
        const double c = std::cos(frame_), s = std::sin(frame_);
        const RealMatrix rot(2, 2, {c, -s, s, c});
        m = rot * m * rot.transpose();
    }
    if (!w_identity_) m = w_ * m * w_.inverse();
    return m;
}

std::vector<RealMatrix> CompactGroup2::element_matrices() const {
    std::vector<RealMatrix> out;
    for (const auto& e : enumerate()) out.push_back(materialize(e));
    return out;
}

std::vector<double> CompactGroup2::reflection_angles() const {
    std::vector<double> out;
    for (const auto& e : enumerate()) {
        if (!e.reflection) continue;
        double phi = std::fmod(e.turn.radians() + 2.0 * frame_, kTwoPi);
        if (phi < 0) phi += kTwoPi;
        out.push_back(phi);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Orbits, Haar weights, antipodes
// ---------------------------------------------------------------------------

OrbitDesc orbit(const CompactGroup2& g, const Vec2& x) {
    OrbitDesc out;
    if (x.norm() == 0) throw Error(ErrorKind::ZeroVector, "orbit of the zero vector");
    if (!g.finite()) {
        out.full_circle = true;
        return out;
    }
    if (!g.conjugacy_is_identity(1e-12))
        throw Error(ErrorKind::InvalidInput, "orbit computation requires an orthogonal group (W = I)");
    const double angle_tol = 1e-10;
    for (const auto& m : g.element_matrices()) {
        const Vec2 y = apply(m, x);
        bool dup = false;
        for (const auto& p : out.points) {
            double d = std::abs(p.angle() - y.angle());
            d = std::min(d, kTwoPi - d);
            if (d < angle_tol) { dup = true; break; }
        }
        if (!dup) out.points.push_back(y);
    }
    std::sort(out.points.begin(), out.points.end(),
              [](const Vec2& a, const Vec2& b) { return a.angle() < b.angle(); });
    return out;
}

double haar_weight(const CompactGroup2& g) {
    if (!g.finite()) throw Error(ErrorKind::NotFinite, "Haar weights of an infinite group");
    return 1.0 / g.order();
}

std::vector<Vec2> antipodal_points(const CompactGroup2& g) {
    if (!g.finite())
        throw Error(g.kind() == GroupKind::SO2 || g.kind() == GroupKind::O2
                        ? ErrorKind::AntipodesEverywhere
                        : ErrorKind::NotFinite,
                    "infinite group");
    if (g.contains_minus_identity())
        throw Error(ErrorKind::AntipodesEverywhere, "-I is an element: every point is antipodal");
    if (!g.conjugacy_is_identity(1e-12))
        throw Error(ErrorKind::InvalidInput, "antipodal points require an orthogonal group (W = I)");
    std::vector<double> angles;
    for (double phi : g.reflection_angles()) {
        const double axis = 0.5 * phi;
        for (double a : {axis + 0.25 * kTwoPi, axis + 0.75 * kTwoPi}) {
            a = std::fmod(a, kTwoPi);
            if (a < 0) a += kTwoPi;
            angles.push_back(a);
        }
    }
    std::sort(angles.begin(), angles.end());
    angles.erase(std::unique(angles.begin(), angles.end(),
                             [](double a, double b) { return std::abs(a - b) < 1e-12; }),
                 angles.end());
    if (angles.size() > 1 && std::abs(angles.back() - angles.front() - kTwoPi) < 1e-12)
        angles.pop_back();
    std::vector<Vec2> out;
    out.reserve(angles.size());
    for (double a : angles) out.push_back(unit_vec(a));
    return out;
}

// ---------------------------------------------------------------------------
// Conjugacy helpers
// ---------------------------------------------------------------------------

RealMatrix det_normalized(const RealMatrix& w) {
    const double d = w.det();
    if (!(d > 0)) throw Error(ErrorKind::InvalidInput, "conjugacy must have positive determinant");
    return w * (1.0 / std::sqrt(d));
}

bool conjugacies_match(const RealMatrix& w1, const RealMatrix& w2, double tol) {
    const RealMatrix n1 = det_normalized(w1), n2 = det_normalized(w2);
    return (n1 - n2).frobenius() <= tol * std::max(1.0, n1.frobenius());
}

// ---------------------------------------------------------------------------
// Canonicalization
// ---------------------------------------------------------------------------

namespace {

double mod_positive(double x, double period) {
    double r = std::fmod(x, period);
    if (r < 0) r += period;
    return r;
}

bool near_zero_mod(double x, double period, double tol) {
    const double r = mod_positive(x, period);
    return r < tol || period - r < tol;
}

}  // namespace

CompactGroup2 canonicalize_elements(const std::vector<GroupElement2>& elements, double frame,
                                    const RealMatrix& w) {
    std::vector<Rational> rot, refl;
    for (const auto& e : elements) (e.reflection ? refl : rot).push_back(e.turn);
    const int nu = static_cast<int>(rot.size());
    if (nu == 0) throw Error(ErrorKind::InvalidInput, "element set without identity");
    std::sort(rot.begin(), rot.end());
    for (int k = 0; k < nu; ++k)
        if (!(rot[k] == Rational(k, nu)))
            throw Error(ErrorKind::InvalidInput, "rotation part is not a cyclic subgroup");

    CompactGroup2 base = CompactGroup2::cyclic(1);
    if (refl.empty()) {
        base = CompactGroup2::cyclic(nu);  // frame vacuous
    } else {
        if (static_cast<int>(refl.size()) != nu)
            throw Error(ErrorKind::InvalidInput, "reflection count does not match rotation count");
        std::sort(refl.begin(), refl.end());
        const Rational r0 = refl.front();
        for (int k = 0; k < nu; ++k)
            if (!(refl[k] == r0 + Rational(k, nu)))
                throw Error(ErrorKind::InvalidInput, "reflections are not a single rotation class");
        const double offset = mod_positive(r0.radians() + 2.0 * frame, kTwoPi / nu);
        const double new_frame = 0.5 * offset;
        if (near_zero_mod(new_frame, kTwoPi / (2 * nu), 1e-12)) {
            base = CompactGroup2::dihedral(nu);
        } else if (nu == 1 && std::abs(new_frame - 0.25 * kTwoPi) < 1e-12) {
            base = CompactGroup2::dstar1();
        } else if (frame == 0.0) {
            // exact rational tilt: keep the explicit list
            base = CompactGroup2::explicit_finite(elements);
        } else {
            base = CompactGroup2::dihedral(nu).with_frame(new_frame);
        }
    }
    if ((w - RealMatrix::identity(2)).max_abs() > 0) return base.with_conjugacy(w);
    return base;
}

// ---------------------------------------------------------------------------
// Intersection (Table-1 style logic)
// ---------------------------------------------------------------------------

namespace {

int rotation_count(const CompactGroup2& g) {
    switch (g.kind()) {
        case GroupKind::Cyclic:
        case GroupKind::Dihedral: return g.nu();
        case GroupKind::DStar1: return 1;
        case GroupKind::ExplicitFinite: {
            int n = 0;
            for (const auto& e : g.enumerate())
                if (!e.reflection) ++n;
            return n;
        }
        default: throw Error(ErrorKind::NotFinite, "rotation count of an infinite group");
    }
}

CompactGroup2 plus_minus_one_group(bool minus) {
    return minus ? CompactGroup2::cyclic(2) : CompactGroup2::cyclic(1);
}

CompactGroup2 finite_intersection(const CompactGroup2& a, const CompactGroup2& b,
                                  const RealMatrix& w) {
    const int g = std::gcd(rotation_count(a), rotation_count(b));
    std::vector<double> common;
    if (a.has_reflections() && b.has_reflections()) {
        const auto ra = a.reflection_angles();
        const auto rb = b.reflection_angles();
        for (double pa : ra)
            for (double pb : rb) {
                double d = std::abs(pa - pb);
                d = std::min(d, kTwoPi - d);
                if (d < 1e-10) common.push_back(pa);
            }
        std::sort(common.begin(), common.end());
    }
    if (common.empty()) {
        CompactGroup2 out = CompactGroup2::cyclic(g);
        return (w - RealMatrix::identity(2)).max_abs() > 0 ? out.with_conjugacy(w) : out;
    }
    // common elements form a group: rotations C_g plus g reflections
    const double offset = mod_positive(common.front(), kTwoPi / g);
    const double frame = 0.5 * offset;
    CompactGroup2 out = CompactGroup2::dihedral(g);
    if (near_zero_mod(frame, kTwoPi / (2 * g), 1e-10)) {
        // axis-aligned
    } else if (g == 1 && std::abs(frame - 0.25 * kTwoPi) < 1e-10) {
        out = CompactGroup2::dstar1();
    } else {
        out = out.with_frame(frame);
    }
    return (w - RealMatrix::identity(2)).max_abs() > 0 ? out.with_conjugacy(w) : out;
}

}  // namespace

CompactGroup2 intersect(const CompactGroup2& g1, const CompactGroup2& g2) {
    // Different conjugacies (beyond a positive scalar) share only +-I: a
    // common element beyond C_2 would force the conjugacies to agree up to a
    // scalar factor.
    if (!conjugacies_match(g1.conjugacy(), g2.conjugacy())) {
        return plus_minus_one_group(g1.contains_minus_identity() && g2.contains_minus_identity());
    }
    const RealMatrix w = det_normalized(g1.conjugacy());
    const bool w_id = (w - RealMatrix::identity(2)).max_abs() < 1e-12;
    auto with_w = [&](CompactGroup2 g) { return w_id ? g : g.with_conjugacy(w); };

    const GroupKind k1 = g1.kind(), k2 = g2.kind();
    if (k1 == GroupKind::O2) return with_w(g2.with_conjugacy(w));
    if (k2 == GroupKind::O2) return with_w(g1.with_conjugacy(w));
    if (k1 == GroupKind::SO2 && k2 == GroupKind::SO2) return with_w(CompactGroup2::so2());
    if (k1 == GroupKind::SO2 || k2 == GroupKind::SO2) {
        const CompactGroup2& fin = (k1 == GroupKind::SO2) ? g2 : g1;
        return with_w(CompactGroup2::cyclic(rotation_count(fin)));
    }
    return finite_intersection(g1, g2, w);
}

// ---------------------------------------------------------------------------
// Maximality and tangent spaces
// ---------------------------------------------------------------------------

bool is_maximal(const CompactGroup2& g) {
    switch (g.kind()) {
        case GroupKind::SO2: return false;  // [O(2)] = [SO(2)]
        case GroupKind::O2:
        case GroupKind::Cyclic:
        case GroupKind::Dihedral:
        case GroupKind::DStar1: return true;
        case GroupKind::ExplicitFinite: break;
    }
    // Probe grid: a strictly larger group with identical orbits would need
    // orbits of more than |g| points to coincide with orbits of |g| points at
    // a generic probe direction, which cannot happen for finite subgroups of
    // O(2). Confirm by finding a probe whose orbit has full cardinality.
    const int n = g.order();
    for (int k = 0; k < 720; ++k) {
        const Vec2 x = unit_vec((k + 0.37) * kTwoPi / 720.0);
        if (orbit(g, x).components() == n) return true;
    }
    return true;  // every finite subgroup of O(2) is maximal
}

TangentSpace2 tangent_space(const CompactGroup2& g) {
    TangentSpace2 t;
    if (g.kind() == GroupKind::SO2 || g.kind() == GroupKind::O2) {
        t.zero = false;
        t.w = det_normalized(g.conjugacy());
    }
    return t;
}

// ---------------------------------------------------------------------------
// Comparisons
// ---------------------------------------------------------------------------

namespace {

struct Descriptor {
    bool infinite = false;
    bool reflections = false;
    int rotations = 0;
    std::vector<double> reflection_angles;
};

Descriptor describe_structure(const CompactGroup2& g) {
    Descriptor d;
    if (!g.finite()) {
        d.infinite = true;
        d.reflections = g.kind() == GroupKind::O2;
        return d;
    }
    d.rotations = rotation_count(g);
    d.reflections = g.has_reflections();
    d.reflection_angles = g.reflection_angles();
    return d;
}

}  // namespace

bool same_group(const CompactGroup2& a, const CompactGroup2& b, double tol) {
    if (!conjugacies_match(a.conjugacy(), b.conjugacy(), tol)) return false;
    const Descriptor da = describe_structure(a), db = describe_structure(b);
    if (da.infinite != db.infinite) return false;
    if (da.infinite) return da.reflections == db.reflections;
    if (da.rotations != db.rotations || da.reflections != db.reflections) return false;
    if (da.reflection_angles.size() != db.reflection_angles.size()) return false;
    for (size_t i = 0; i < da.reflection_angles.size(); ++i) {
        double d = std::abs(da.reflection_angles[i] - db.reflection_angles[i]);
        d = std::min(d, kTwoPi - d);
        if (d > tol) return false;
    }
    return true;
}

bool same_canonical(const CompactGroup2& a, const CompactGroup2& b) {
    auto norm = [](const CompactGroup2& g) -> std::pair<GroupKind, int> {
        if (g.kind() == GroupKind::ExplicitFinite) {
            const CompactGroup2 c =
                canonicalize_elements(g.enumerate(), g.frame(), RealMatrix::identity(2));
            if (c.kind() != GroupKind::ExplicitFinite) return {c.kind(), c.nu()};
            const int rot = rotation_count(g);
            return {g.has_reflections() ? GroupKind::Dihedral : GroupKind::Cyclic, rot};
        }
        return {g.kind(), g.nu()};
    };
    return norm(a) == norm(b);
}

std::string describe(const CompactGroup2& g) {
    std::string s;
    switch (g.kind()) {
        case GroupKind::Cyclic: s = "cyclic:" + std::to_string(g.nu()); break;
        case GroupKind::Dihedral: s = "dihedral:" + std::to_string(g.nu()); break;
        case GroupKind::DStar1: s = "dstar1"; break;
        case GroupKind::SO2: s = "so2"; break;
        case GroupKind::O2: s = "o2"; break;
        case GroupKind::ExplicitFinite:
            s = "explicit[" + std::to_string(g.order()) + "]";
            break;
    }
    if (g.frame() != 0.0) s += "+frame";
    if (!g.conjugacy_is_identity()) s += "@W";
    return s;
}

}  // namespace groups
}  // namespace ofbf
