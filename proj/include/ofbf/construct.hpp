#pragma once

// End-to-end constructors: given an admissible (domain, range) pair, emit an
// OfbfSpec whose classified groups equal the request, either with a singular
// (pivot-atom) spectral measure or an absolutely continuous (slice-density)
// one. Every recipe is verified by the classifier before being returned.

#include "ofbf/spectral.hpp"
#include "ofbf/symmetry.hpp"

namespace ofbf::construct {

using groups::CompactGroup2;
using spectral::OfbfSpec;

enum class RangeTarget { C2, D2, SO2, O2 };

RangeTarget parse_range_target(const CompactGroup2& g);
CompactGroup2 range_target_group(RangeTarget t);
const char* to_string(RangeTarget t);

struct RangeGroupRecipe {
    RangeTarget target;
    RealMatrix h;            // 2x2 range exponent
    HermitianMatrix aastar;  // spherical parameter, Re part PD
};

// Built-in OFBM parametrization realizing the requested range group.
// need_real forces Im(AA*) = 0 (required when -I is in the domain group);
// need_real with target SO2 is impossible. Self-checked via the classifier.
RangeGroupRecipe recipe_for_range(RangeTarget target, bool need_real);

// Singular construction via pivot measures; domain must be finite (not
// conjugate to O(2), which forces an absolutely continuous measure).
OfbfSpec build_singular(const CompactGroup2& domain, RangeTarget range);

// Absolutely continuous construction via slice densities (dihedral/cyclic),
// a constant density (O(2)), or a two-arc measure (D*_1).
OfbfSpec build_ac(const CompactGroup2& domain, RangeTarget range);

}  // namespace ofbf::construct
