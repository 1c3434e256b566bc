#pragma once

// Anisotropic polar coordinates induced by a domain exponent E: the norm
// ||x||_0 = int_0^1 ||t^E x|| dt/t, the unit sphere S_0, and the unique
// decomposition x = tau(x)^E l(x) with ||l(x)||_0 = 1.

#include "ofbf/groups.hpp"
#include "ofbf/matlin.hpp"

namespace ofbf::polar {

struct PolarDecomposition {
    double tau = 0;
    Vec2 l;
};

class PolarSystem {
  public:
    // E must be 1x1 or 2x2 with min Re eig(E) > 0.
    explicit PolarSystem(const RealMatrix& e, int quad_panels = 64, int quad_order = 8);

    int dim() const { return e_.rows(); }
    const RealMatrix& exponent() const { return e_; }
    bool scalar_exponent() const { return scalar_; }
    double min_re_eigenvalue() const { return rho_min_; }

    // ||x||_0 with Euclidean base norm. Quadrature on the log-substituted
    // domain; closed form for scalar E.
    double norm0(const Vec2& x) const;

    // x = tau^E l with ||l||_0 = 1. Closed form for scalar E, monotone
    // bisection otherwise.
    PolarDecomposition decompose(const Vec2& x) const;

    // Point of S_0 in the Euclidean direction `angle` (dim 2).
    Vec2 s0_point(double angle) const;

  private:
    RealMatrix e_;
    bool scalar_ = false;
    double eta_ = 1.0;  // scalar exponent value when scalar_
    double rho_min_ = 1.0;
    int panels_, order_;
};

}  // namespace ofbf::polar
