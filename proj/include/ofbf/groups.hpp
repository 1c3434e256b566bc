#pragma once

// Compact subgroups of O(2) and their positive-definite conjugates: element
// enumeration, orbits, Haar weights, intersections, maximality and tangent
// spaces.
//
// A group is represented as W * O_frame * K * O_frame^{-1} * W^{-1}, where K
// is a canonical subgroup of O(2) (cyclic, dihedral, D*_1, SO(2), O(2) or an
// explicit finite element list), W is symmetric positive definite (normalized
// to determinant 1) and `frame` is a rotation angle. The frame is needed
// because a PD conjugacy cannot rotate reflection axes: a dihedral group with
// tilted axes is not W * D_nu * W^{-1} for any PD W.
//
// Element angles are stored as exact rational fractions of a full turn so
// that closure, composition and equality checks on constructed groups are
// exact.

#include <cstdint>
#include <optional>
#include <vector>

#include "ofbf/matlin.hpp"

namespace ofbf {

struct Vec2 {
    double x = 0, y = 0;
    double norm() const;
    double angle() const;  // atan2 in [0, 2pi)
};

Vec2 unit_vec(double angle);
Vec2 apply(const RealMatrix& m, const Vec2& v);

namespace groups {

// Rational number of full turns, reduced and normalized into [0, 1).
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d);

    double turns() const { return static_cast<double>(num) / static_cast<double>(den); }
    double radians() const;

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    Rational negated() const;
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator<(const Rational& a, const Rational& b);
};

struct GroupElement2 {
    bool reflection = false;
    Rational turn;  // rotation angle, or reflection angle (axis at half of it)

    static GroupElement2 rotation(const Rational& t) { return {false, t}; }
    static GroupElement2 reflection_at(const Rational& t) { return {true, t}; }

    friend GroupElement2 operator*(const GroupElement2& a, const GroupElement2& b);
    GroupElement2 inverse() const;
    bool is_identity() const { return !reflection && turn.num == 0; }
    friend bool operator==(const GroupElement2& a, const GroupElement2& b) {
        return a.reflection == b.reflection && a.turn == b.turn;
    }
    friend bool operator<(const GroupElement2& a, const GroupElement2& b);
};

// O_theta for rotations, F_theta for reflections.
RealMatrix element_matrix(const GroupElement2& g);

enum class GroupKind { Cyclic, Dihedral, DStar1, SO2, O2, ExplicitFinite };

inline constexpr int kMaxOrder = 360;

struct OrbitDesc {
    bool full_circle = false;
    std::vector<Vec2> points;  // empty when full_circle
    int components() const { return full_circle ? 1 : static_cast<int>(points.size()); }
};

class CompactGroup2 {
  public:
    CompactGroup2() : CompactGroup2(cyclic(1)) {}

    static CompactGroup2 cyclic(int nu);
    static CompactGroup2 dihedral(int nu);
    static CompactGroup2 dstar1();
    static CompactGroup2 so2();
    static CompactGroup2 o2();
    // Element list must be closed under composition and inverse.
    static CompactGroup2 explicit_finite(std::vector<GroupElement2> elements);

    CompactGroup2 with_conjugacy(const RealMatrix& w) const;
    CompactGroup2 with_frame(double frame) const;

    GroupKind kind() const { return kind_; }
    int nu() const { return nu_; }
    bool finite() const { return kind_ != GroupKind::SO2 && kind_ != GroupKind::O2; }
    int order() const;  // finite groups only
    bool contains_minus_identity() const;
    bool has_reflections() const;

    const RealMatrix& conjugacy() const { return w_; }
    bool conjugacy_is_identity(double tol = 1e-12) const;
    double frame() const { return frame_; }

    // Canonical elements (frame and conjugacy not applied).
    std::vector<GroupElement2> enumerate() const;
    // Materialized element matrices, frame and conjugacy applied.
    std::vector<RealMatrix> element_matrices() const;
    RealMatrix materialize(const GroupElement2& g) const;

    // Reflection angles (of F_phi) in [0, 2pi), frame applied. Finite only.
    std::vector<double> reflection_angles() const;

  private:
    CompactGroup2(GroupKind kind, int nu) : kind_(kind), nu_(nu), w_(RealMatrix::identity(2)) {}

    GroupKind kind_;
    int nu_ = 1;
    std::vector<GroupElement2> elements_;  // ExplicitFinite only
    RealMatrix w_;
    bool w_identity_ = true;
    double frame_ = 0.0;
};

OrbitDesc orbit(const CompactGroup2& g, const Vec2& x);
double haar_weight(const CompactGroup2& g);

// Unit vectors x with -x in the orbit of x; requires -I not in g. One pair at
// pi/2 angular distance from each reflection axis.
std::vector<Vec2> antipodal_points(const CompactGroup2& g);

CompactGroup2 intersect(const CompactGroup2& g1, const CompactGroup2& g2);

bool is_maximal(const CompactGroup2& g);

struct TangentSpace2 {
    bool zero = true;
    RealMatrix w = RealMatrix::identity(2);  // span is w * so(2) * w^{-1}
};
TangentSpace2 tangent_space(const CompactGroup2& g);

// Exact structural equality: same subgroup of GL(2,R) within tolerance.
bool same_group(const CompactGroup2& a, const CompactGroup2& b, double tol = 1e-9);
// Same canonical type and order, conjugacy and frame ignored.
bool same_canonical(const CompactGroup2& a, const CompactGroup2& b);

// Scalar conjugacy test: true iff w1 = w * w2 for a scalar w > 0.
bool conjugacies_match(const RealMatrix& w1, const RealMatrix& w2, double tol = 1e-10);
RealMatrix det_normalized(const RealMatrix& w);

// Canonicalize a closed finite element set (frame f applies to the whole
// set): recognizes C_nu, D_nu, D*_1, and folds an axis offset into the frame.
CompactGroup2 canonicalize_elements(const std::vector<GroupElement2>& elements, double frame,
                                    const RealMatrix& w);

std::string describe(const CompactGroup2& g);

}  // namespace groups
}  // namespace ofbf
