#pragma once

// Spherical measures: pivot/orbit measures with prescribed symmetry, the
// Hermitian lift Xi(d theta) = AA* Lambda(d theta) + conj(AA*) Lambda(-d theta),
// dihedral/cyclic slice densities, and validation.
//
// Angle conventions: for m = 2, atoms and arc breakpoints are Euclidean
// angles in [0, 2pi), and the antipode of theta is theta + pi. For m = 1 the
// sphere S^0 = {+1, -1}; atoms carry angle +1 or -1 meaning the point itself.

#include <string>
#include <vector>

#include "ofbf/groups.hpp"
#include "ofbf/matlin.hpp"

namespace ofbf::measures {

using groups::CompactGroup2;

struct ScalarAtom {
    double angle = 0;
    double mass = 0;
};

// Scalar measure built from Haar-averaged Dirac atoms on group orbits of
// pivot points. Orbit j (1-based) carries total mass j, split evenly over its
// points.
struct PivotMeasure {
    CompactGroup2 group;
    std::vector<Vec2> pivots;
    std::vector<std::vector<ScalarAtom>> orbit_atoms;  // one list per pivot

    std::vector<ScalarAtom> atoms() const;
};

PivotMeasure pivot_measure(const CompactGroup2& group, const std::vector<Vec2>& pivots);

// Grows the pivot set (deterministic golden-angle candidates) until the
// measure's exact symmetry group equals `group` and the orbit points span
// R^2. At most 8 pivots.
PivotMeasure extend_pivots_until_symmetry(const CompactGroup2& group,
                                          std::vector<Vec2> seeds = {});

// Exact domain symmetry group of a scalar atomic measure.
CompactGroup2 scalar_measure_symmetry(const PivotMeasure& measure);

struct MatrixAtom {
    double angle = 0;  // angle in [0,2pi) for m=2; +1/-1 for m=1
    HermitianMatrix value;
};

enum class MeasureVariant { Atomic, PiecewiseConstant, Constant };

class SphericalMeasure {
  public:
    static SphericalMeasure atomic(int m, int n, std::vector<MatrixAtom> atoms);
    // Arcs [breakpoints[i], breakpoints[i+1]) wrapping at 2pi; values are
    // densities with respect to d theta.
    static SphericalMeasure piecewise(int n, std::vector<double> breakpoints,
                                      std::vector<HermitianMatrix> values);
    static SphericalMeasure constant(int n, const HermitianMatrix& value);

    MeasureVariant variant() const { return variant_; }
    int sphere_dim() const { return m_; }  // ambient dimension m
    int value_dim() const { return n_; }

    const std::vector<MatrixAtom>& atoms() const { return atoms_; }
    const std::vector<double>& breakpoints() const { return breakpoints_; }
    const std::vector<HermitianMatrix>& values() const { return values_; }
    const HermitianMatrix& constant_value() const { return values_.front(); }

    // Density value at angle theta (PiecewiseConstant / Constant).
    const HermitianMatrix& value_at(double theta) const;
    // Measure of the whole sphere (atom sum + arc-length-weighted values).
    HermitianMatrix total() const;

    // Merge duplicate atoms / adjacent equal arcs; collapses an all-equal
    // piecewise measure to Constant.
    SphericalMeasure canonicalized() const;

  private:
    SphericalMeasure() = default;
    MeasureVariant variant_ = MeasureVariant::Constant;
    int m_ = 2, n_ = 1;
    std::vector<MatrixAtom> atoms_;
    std::vector<double> breakpoints_;
    std::vector<HermitianMatrix> values_;
};

// Hermitian lift of a pivot measure by a spherical parameter matrix AA*.
// Preconditions follow the lift's compatibility rules: Re(AA*) PD;
// Im(AA*) = 0 iff -I is in the group; pivots must avoid antipodal points
// when -I is absent.
SphericalMeasure xi_lift(const PivotMeasure& lambda, const ComplexMatrix& a);
SphericalMeasure xi_lift_gram(const PivotMeasure& lambda, const HermitianMatrix& aastar);

// Dihedral slice density: 4*nu arcs of width 2pi/(4nu); arcs
// [1/4+(k-1), 3/4+(k-1)) * 2pi/nu carry delta1, the complement delta2.
// nu odd: delta2 = conj(delta1) with Im delta1 != 0. nu even: both real with
// Re delta2 = c * Re delta1, c not in {0, 1}.
SphericalMeasure dihedral_slices(int nu, const HermitianMatrix& delta1,
                                 const HermitianMatrix& delta2);

// Cyclic slice density: values cycle delta1..delta4 over quarter-slices.
// nu odd: delta3 = conj(delta1), delta4 = conj(delta2), both imaginary parts
// nonzero, Re delta1 != Re delta2. nu even: all real, pairwise distinct.
SphericalMeasure cyclic_slices(int nu, const HermitianMatrix& d1, const HermitianMatrix& d2,
                               const HermitianMatrix& d3, const HermitianMatrix& d4);

struct ValidationReport {
    bool hermitian_symmetry = false;
    bool full_rank_on_support = false;
    bool span = false;
    std::string detail;
    bool ok() const { return hermitian_symmetry && full_rank_on_support && span; }
};

ValidationReport validate(const SphericalMeasure& measure);

// Antipode map in the stored angle convention.
double antipode_angle(int m, double theta);
bool same_angle(double a, double b, double tol = 1e-10);

}  // namespace ofbf::measures
