#pragma once

// Spectral specifications and covariance evaluation for the polar form
// F_X(dx) = r^{-H} Delta(d theta) r^{-H*} r^{-1} dr.

#include <vector>

#include "ofbf/matlin.hpp"
#include "ofbf/measures.hpp"

namespace ofbf::spectral {

// Exponent pair (E, H) with 0 < min Re eig(H) <= max Re eig(H)
// < min Re eig(E*) and the normalization min Re eig(E*) = 1.
class ScalingPair {
  public:
    ScalingPair(const RealMatrix& e, const RealMatrix& h);
    // Divides both exponents by min Re eig(E*) before validating.
    static ScalingPair normalized(const RealMatrix& e, const RealMatrix& h);

    const RealMatrix& domain_exponent() const { return e_; }
    const RealMatrix& range_exponent() const { return h_; }
    int m() const { return e_.rows(); }
    int n() const { return h_.rows(); }
    double h_min() const { return h_min_; }
    double h_max() const { return h_max_; }
    RealMatrix h_e() const;  // H + tr(E)/2 I

  private:
    RealMatrix e_, h_;
    double h_min_ = 0, h_max_ = 0;
};

struct OfbfSpec {
    OfbfSpec(const ScalingPair& scaling, const measures::SphericalMeasure& spherical);

    int m() const { return scaling.m(); }
    int n() const { return scaling.n(); }

    ScalingPair scaling;
    measures::SphericalMeasure spherical;
};

// The radial integral runs on the log scale with a bounded-phase head and an
// analytically rotated oscillatory tail; the node window is widened
// automatically when the integrand's power-law tails require it, so
// log10_r_min / log10_r_max are the nominal window only.
struct QuadratureConfig {
    double log10_r_min = -18.0;
    double log10_r_max = 18.0;
    int radial_panels = 800;     // panel budget per radial integral
    int radial_order = 8;
    int angular_nodes = 32;      // per kink-free angular subinterval
    double rel_tol = 1e-6;
    int laguerre_nodes = 48;
    double phase_split = 30.0;   // head/tail split in phase units
    int refine_level = 0;        // internal: refinement steps applied
};

struct CovarianceResult {
    RealMatrix gamma;
    double error_estimate = 0;  // refinement difference, relative
    double imag_residual = 0;   // discarded imaginary part, relative
};

// Gamma(t1, t2). For m = 1, points are passed in Vec2::x. Requires a scalar
// domain exponent (all constructions here use E = I).
RealMatrix covariance(const OfbfSpec& spec, const Vec2& t1, const Vec2& t2,
                      const QuadratureConfig& cfg = {});

// Covariance with an a-posteriori error estimate; doubles the radial
// resolution until the target tolerance is met (at most 4 refinements).
CovarianceResult covariance_checked(const OfbfSpec& spec, const Vec2& t1, const Vec2& t2,
                                    const QuadratureConfig& cfg = {});

// D(t1,t2) = Gamma(t1,t1) + Gamma(t2,t2) - Gamma(t1,t2) - Gamma(t2,t1).
RealMatrix structure_function(const OfbfSpec& spec, const Vec2& t1, const Vec2& t2,
                              const QuadratureConfig& cfg = {});

// Max relative deviation of Gamma(c^E t1, c^E t2) from c^H Gamma c^{H*} over
// the probe pairs.
double oss_check(const OfbfSpec& spec, double c, const std::vector<std::pair<Vec2, Vec2>>& pairs,
                 const QuadratureConfig& cfg = {});

// Max relative deviation of F(c^{E*} B) from c^{-H} F(B) c^{-H*} over probe
// annulus x region sets.
double homogeneity_check(const OfbfSpec& spec, double c);

// Exact (eigenbasis) measure of an annulus x region set.
HermitianMatrix polar_set_measure(const OfbfSpec& spec, double r1, double r2, double theta1,
                                  double theta2);

// OFBM spectral density f_X(x) for m = 1.
HermitianMatrix ofbm_density(const RealMatrix& h, const HermitianMatrix& aastar, double x);

// int_1^inf f_X(x) dx by quadrature (log-domain panels, certified tail).
HermitianMatrix ofbm_tail_integral(const RealMatrix& h, const HermitianMatrix& aastar);

// All-pairs covariance blocks, row-major [i * N + j]. The parallel kernel
// computes independent (i, j) blocks under OpenMP; the serial variant is the
// reference implementation used to cross-check it.
std::vector<RealMatrix> covariance_grid(const OfbfSpec& spec, const std::vector<Vec2>& points,
                                        const QuadratureConfig& cfg = {});
std::vector<RealMatrix> covariance_grid_serial(const OfbfSpec& spec,
                                               const std::vector<Vec2>& points,
                                               const QuadratureConfig& cfg = {});

namespace detail {

// Radial building blocks, exposed for oracle tests.
//
// radial_that: int_0^inf (e^{ics} - 1 - i c s e^{-s}) s^{-z-1} ds
// radial_r:    int_0^inf (e^{i alpha s} - 1)(e^{-i beta s} - 1) s^{-z-1} ds
Complex radial_that(double c, Complex z, const QuadratureConfig& cfg);
Complex radial_r(double alpha, double beta, Complex z, const QuadratureConfig& cfg);

}  // namespace detail

}  // namespace ofbf::spectral
