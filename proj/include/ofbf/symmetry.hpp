#pragma once

// Classification of domain and range symmetry groups, admissible pairs,
// exponent sets and isotropy.

#include <optional>
#include <string>

#include "ofbf/groups.hpp"
#include "ofbf/matlin.hpp"
#include "ofbf/spectral.hpp"

namespace ofbf::symmetry {

using groups::CompactGroup2;
using groups::TangentSpace2;
using spectral::OfbfSpec;

enum class MatrixKind { SymmetricPD, Skew };

// Orthogonal matrices commuting with M. Symmetric PD with equal eigenvalues
// gives O(2); distinct eigenvalues give the dihedral group D_2 in the
// eigenframe; a nonzero skew matrix gives SO(2); the zero matrix gives O(2).
CompactGroup2 centralizer_in_O2(const RealMatrix& m, MatrixKind kind);

// Range symmetry group of a (2,2) or (1,2)/(1,1) spec via the
// centralizer-intersection formula over the regions of the spherical
// support. Output canonicalized to C_2, D_2, SO(2) or O(2) up to a PD
// conjugacy (plus a frame for tilted eigenstructures).
CompactGroup2 range_group(const OfbfSpec& spec);

// Exact domain symmetry group of the spherical measure (m = 2): candidate
// rotations/reflections from atom angles and arc breakpoints, accepted on
// exact pushforward invariance.
CompactGroup2 domain_of_measure(const measures::SphericalMeasure& measure);
CompactGroup2 domain_of_measure(const measures::PivotMeasure& measure);

// Admissibility of a (domain, range) pair: D_2 and O(2) range
// groups force -I into the domain group, SO(2) forces it out, C_2 is free.
struct Admissibility {
    bool admissible = false;
    std::string reason;
};
Admissibility validate_pair(const CompactGroup2& domain, const CompactGroup2& range);

struct ExponentSet {
    RealMatrix base;
    TangentSpace2 tangent;  // base + tangent
};

struct IsotropyCertificate {
    bool isotropic = false;
    double eta = 0;  // scalar exponent when isotropic
    std::string note;
};

struct SymmetryReport {
    CompactGroup2 domain_group;
    CompactGroup2 range_group;
    ExponentSet domain_exponents;
    ExponentSet range_exponents;
    IsotropyCertificate isotropy;
    bool admissible = false;
};

ExponentSet domain_exponent_set(const OfbfSpec& spec, const CompactGroup2& domain);
ExponentSet range_exponent_set(const OfbfSpec& spec, const CompactGroup2& range);

IsotropyCertificate isotropy_check(const OfbfSpec& spec);
IsotropyCertificate isotropy_check(const OfbfSpec& spec, const CompactGroup2& domain);

// Full classification of a (2,2) spec; for m = 1 the domain group is {+-1}
// and the report's domain CompactGroup2 is set to C_2 by convention.
SymmetryReport classify(const OfbfSpec& spec);

// Numeric fallback: covariance invariance of a single candidate element
// (domain: Gamma(As, At) = Gamma(s, t); range: B Gamma B* = Gamma) over a
// probe-pair grid. Returns the max relative deviation.
double covariance_invariance_deviation(const OfbfSpec& spec, const RealMatrix& element,
                                       bool domain_side,
                                       const spectral::QuadratureConfig& cfg = {});

}  // namespace ofbf::symmetry
