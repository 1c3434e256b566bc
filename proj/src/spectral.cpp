#include "ofbf/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "ofbf/polar.hpp"
#include "ofbf/quadrature.hpp"

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace ofbf::spectral {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kPi = 3.1415926535897932384626433832795;
}

// ---------------------------------------------------------------------------
// ScalingPair / OfbfSpec
// ---------------------------------------------------------------------------

ScalingPair::ScalingPair(const RealMatrix& e, const RealMatrix& h) : e_(e), h_(h) {
    if (!e.square() || !h.square() || e.rows() > 2 || h.rows() > 2)
        throw Error(ErrorKind::UnsupportedDimension, "exponents must be 1x1 or 2x2");
    const double e_min = min_re_eig(e_);
    h_min_ = min_re_eig(h_);
    h_max_ = max_re_eig(h_);
    if (!(h_min_ > 0 && h_max_ < e_min))
        throw Error(ErrorKind::InvalidInput,
                    "exponents must satisfy 0 < min Re eig(H) <= max Re eig(H) < min Re eig(E*)");
    if (std::abs(e_min - 1.0) > 1e-9)
        throw Error(ErrorKind::InvalidInput,
                    "exponents must be normalized so that min Re eig(E*) = 1");
}

ScalingPair ScalingPair::normalized(const RealMatrix& e, const RealMatrix& h) {
    const double e_min = min_re_eig(e);
    if (!(e_min > 0))
        throw Error(ErrorKind::InvalidInput, "domain exponent must have positive eigenvalues");
    return ScalingPair(e * (1.0 / e_min), h * (1.0 / e_min));
}

RealMatrix ScalingPair::h_e() const {
    return h_ + RealMatrix::identity(h_.rows()) * (0.5 * e_.trace());
}

OfbfSpec::OfbfSpec(const ScalingPair& scaling_in, const measures::SphericalMeasure& spherical_in)
    : scaling(scaling_in), spherical(spherical_in) {
    if (scaling.m() != spherical.sphere_dim() || scaling.n() != spherical.value_dim())
        throw Error(ErrorKind::InvalidInput, "exponent and measure dimensions disagree");
    const auto rep = measures::validate(spherical);
    if (!rep.ok())
        throw Error(ErrorKind::IncompatibleSpec, "spherical measure invalid: " + rep.detail);
}

// ---------------------------------------------------------------------------
// Radial integrals
// ---------------------------------------------------------------------------

namespace {

struct RadialCfg {
    double phase_split = 30.0;
    double max_width = 1.5;
    double phase_per_panel = 6.0;
    int panel_budget = 800;
    // rules resolved once per evaluation; the cache lookup takes a lock
    const quad::Rule* gl = nullptr;
    const quad::Rule* lag = nullptr;
};

RadialCfg radial_cfg(const QuadratureConfig& cfg) {
    RadialCfg r;
    r.phase_split = cfg.phase_split;
    const double shrink = std::pow(0.5, cfg.refine_level);
    r.max_width = 0.75 * shrink;
    r.phase_per_panel = 3.0 * shrink;
    r.panel_budget = cfg.radial_panels << std::min(cfg.refine_level, 8);
    int laguerre = cfg.laguerre_nodes;
    if (cfg.refine_level > 0) laguerre += 16 * cfg.refine_level;
    r.gl = &quad::gauss_legendre(cfg.radial_order);
    r.lag = &quad::gauss_laguerre(laguerre);
    return r;
}

Complex cpow(double s, Complex z) { return std::exp(z * std::log(s)); }

// int_{s0}^inf e^{ics} s^{-z-1} ds by rotating the contour into the upper
// half plane (s = s0 + iy/c) and Gauss-Laguerre in y.
Complex osc_tail(double c, Complex z, double s0, const RadialCfg& cfg) {
    if (c < 0) return std::conj(osc_tail(-c, std::conj(z), s0, cfg));
    const auto& rule = *cfg.lag;
    Complex sum = 0;
    for (size_t j = 0; j < rule.nodes.size(); ++j) {
        const Complex s(s0, rule.nodes[j] / c);
        sum += rule.weights[j] * std::exp(-(z + 1.0) * std::log(s));
    }
    return Complex(0, 1) / c * std::exp(Complex(0, c * s0)) * sum;
}

// int_{s0}^inf e^{-s} s^{-z} ds
Complex exp_tail(Complex z, double s0, const RadialCfg& cfg) {
    if (s0 < 0.5) {
        // branch point at s = 0 is close: integrate [s0, 1] on the log scale,
        // then the Laguerre tail from 1
        const auto& gl = *cfg.gl;
        Complex head = 0;
        const double u_lo = std::log(s0), u_hi = 0.0;
        const int panels = 8;
        for (int p = 0; p < panels; ++p) {
            const double a = u_lo + (u_hi - u_lo) * p / panels;
            const double b = u_lo + (u_hi - u_lo) * (p + 1) / panels;
            Complex acc = 0;
            for (size_t q = 0; q < gl.nodes.size(); ++q) {
                const double u = quad::map_node(gl.nodes[q], a, b);
                // s^{-z} ds = e^{(1-z)u} du
                acc += gl.weights[q] * std::exp(-std::exp(u)) * std::exp((1.0 - z) * u);
            }
            head += acc * 0.5 * (b - a);
        }
        return head + exp_tail(z, 1.0, cfg);
    }
    const auto& rule = *cfg.lag;
    Complex sum = 0;
    for (size_t j = 0; j < rule.nodes.size(); ++j)
        sum += rule.weights[j] * cpow(s0 + rule.nodes[j], -z);
    return std::exp(-s0) * sum;
}

// int_0^inf (e^{ics} - 1 - i c s e^{-s}) s^{-z-1} ds for 0 < Re z < 2.
// The linear compensator makes the term integrable at 0 for Re z >= 1; the
// compensators of the three terms forming the covariance kernel cancel
// exactly because the kernel has no linear part.
Complex that_impl(double c, Complex z, const RadialCfg& cfg) {
    if (c == 0.0) return 0.0;
    const double cmag = std::abs(c);
    const double s0 = cfg.phase_split / cmag;
    const double rez = z.real();

    // low-s cutoff from the O(s^{2 - Re z}) envelope of the integrand
    const double denom = cmag + 0.5 * cmag * cmag;
    const double scale = std::pow(cmag, rez);
    double s_lo = std::pow(1e-14 * std::max(scale, 1e-300) * (2.0 - rez) / denom, 1.0 / (2.0 - rez));
    s_lo = std::clamp(s_lo, 1e-240, 0.5 * s0);

    const auto& gl = *cfg.gl;
    const double u_hi = std::log(s0);
    double u = std::log(s_lo);
    Complex head = 0;
    int panels = 0;
    // The integrand is written as (kernel / s^2) * e^{(2-z)u}: the factored
    // kernel stays O(|c|) as s -> 0 (no cancellation in cos(cs) - 1, no
    // underflow-times-overflow against the e^{-zu} weight).
    while (u < u_hi) {
        if (++panels > cfg.panel_budget)
            throw Error(ErrorKind::QuadratureFailure, "radial panel budget exhausted");
        const double s_here = std::exp(u);
        const double rate =
            std::max({1.0, cmag * s_here, s_here < 60.0 ? s_here : 1.0});
        const double w = std::min({cfg.max_width, cfg.phase_per_panel / rate, u_hi - u});
        Complex acc = 0;
        for (size_t q = 0; q < gl.nodes.size(); ++q) {
            const double uu = quad::map_node(gl.nodes[q], u, u + w);
            const double s = std::exp(uu);
            const double x = c * s;
            // ratios first: s*s would underflow long before s does
            const double half_ratio = std::sin(0.5 * x) / s;
            const double re = -2.0 * half_ratio * half_ratio;
            const double im = (std::sin(x) - x) / s / s + c * (-std::expm1(-s)) / s;
            acc += gl.weights[q] * Complex(re, im) * std::exp((2.0 - z) * uu);
        }
        head += acc * 0.5 * w;
        u += w;
    }

    const Complex tail = osc_tail(c, z, s0, cfg) - cpow(s0, -z) / z -
                         Complex(0, c) * exp_tail(z, s0, cfg);
    return head + tail;
}

Complex r_impl(double alpha, double beta, Complex z, const RadialCfg& cfg) {
    return that_impl(alpha - beta, z, cfg) - that_impl(alpha, z, cfg) -
           that_impl(-beta, z, cfg);
}

}  // namespace

namespace detail {

Complex radial_that(double c, Complex z, const QuadratureConfig& cfg) {
    return that_impl(c, z, radial_cfg(cfg));
}

Complex radial_r(double alpha, double beta, Complex z, const QuadratureConfig& cfg) {
    return r_impl(alpha, beta, z, radial_cfg(cfg));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Covariance evaluation
// ---------------------------------------------------------------------------

namespace {

ComplexMatrix transpose_cm(const ComplexMatrix& m) { return m.adjoint().conj(); }

struct Engine {
    const OfbfSpec* spec;
    RadialCfg rcfg;
    int angular_nodes;
    double eta;        // scalar domain exponent
    PowerBasis basis;  // of H / eta
    double s0_radius;  // Euclidean radius of S_0 points

    Engine(const OfbfSpec& s, const QuadratureConfig& cfg) : spec(&s) {
        rcfg = radial_cfg(cfg);
        angular_nodes = cfg.angular_nodes << std::min(cfg.refine_level, 3);
        const RealMatrix& e = s.scaling.domain_exponent();
        polar::PolarSystem ps(e);
        if (!ps.scalar_exponent())
            throw Error(ErrorKind::InvalidInput,
                        "covariance evaluation requires a scalar domain exponent E = eta I");
        eta = (s.m() == 1) ? e(0, 0) : 0.5 * e.trace();
        basis = power_basis(s.scaling.range_exponent() * (1.0 / eta));
        s0_radius = eta;  // S_0 = {||x|| = eta} for E = eta I with Euclidean base norm
    }

    // contribution of one direction x with matrix weight V (already scaled by
    // any angular quadrature weight)
    void accumulate(ComplexMatrix& acc, const Vec2& t1, const Vec2& t2, const Vec2& x,
                    const ComplexMatrix& v) const {
        const double alpha = t1.x * x.x + t1.y * x.y;
        const double beta = t2.x * x.x + t2.y * x.y;
        for (int k = 0; k < basis.terms; ++k)
            for (int l = 0; l < basis.terms; ++l) {
                const Complex z = basis.lambda[k] + basis.lambda[l];
                const Complex r = r_impl(alpha, beta, z, rcfg);
                if (r == Complex(0, 0)) continue;
                acc += (basis.projector[k] * v * transpose_cm(basis.projector[l])) * r;
            }
    }

    ComplexMatrix evaluate(const Vec2& t1, const Vec2& t2) const {
        const auto& sph = spec->spherical;
        ComplexMatrix acc(spec->n(), spec->n());
        const double pref = 1.0 / eta;

        if (sph.variant() == measures::MeasureVariant::Atomic) {
            for (const auto& atom : sph.atoms()) {
                Vec2 x;
                if (spec->m() == 1) {
                    x = {atom.angle * s0_radius, 0.0};
                } else {
                    const Vec2 u = unit_vec(atom.angle);
                    x = {u.x * s0_radius, u.y * s0_radius};
                }
                accumulate(acc, t1, t2, x, atom.value.matrix());
            }
            return acc * Complex(pref, 0);
        }

        // densities: integrate over arcs, splitting at the kink angles where
        // <t1, x>, <t2, x> or <t1-t2, x> changes sign (|.|^z has unbounded
        // derivatives there)
        std::vector<double> kinks;
        for (const Vec2& t : {t1, t2, Vec2{t1.x - t2.x, t1.y - t2.y}}) {
            if (std::hypot(t.x, t.y) < 1e-14) continue;
            const double phi = std::atan2(t.y, t.x);
            kinks.push_back(phi + 0.5 * kPi);
            kinks.push_back(phi - 0.5 * kPi);
        }

        std::vector<std::pair<double, double>> arcs;  // [a, b) with b > a
        if (sph.variant() == measures::MeasureVariant::Constant) {
            // two antipodal halves so that the node set is symmetric under
            // theta -> theta + pi and the imaginary parts cancel exactly
            arcs.emplace_back(0.0, kPi);
            arcs.emplace_back(kPi, kTwoPi);
        } else {
            const auto& bps = sph.breakpoints();
            for (size_t i = 0; i < bps.size(); ++i) {
                const double a = bps[i];
                const double b = (i + 1 < bps.size()) ? bps[i + 1] : bps.front() + kTwoPi;
                arcs.emplace_back(a, b);
            }
        }

        // tanh-sinh per kink-free subinterval: the radial integral behaves
        // like |theta - theta_kink|^z at a kink, which plain Gauss rules
        // resolve only algebraically
        const auto& ts = quad::tanh_sinh(angular_nodes);
        for (const auto& [a, b] : arcs) {
            const ComplexMatrix v = (sph.variant() == measures::MeasureVariant::Constant
                                         ? sph.constant_value()
                                         : sph.value_at(0.5 * (a + b)))
                                        .matrix();
            std::vector<double> cuts{a, b};
            for (double k : kinks) {
                double kk = std::fmod(k - a, kTwoPi);
                if (kk < 0) kk += kTwoPi;
                kk += a;
                if (kk > a + 1e-12 && kk < b - 1e-12) cuts.push_back(kk);
            }
            std::sort(cuts.begin(), cuts.end());
            for (size_t s = 0; s + 1 < cuts.size(); ++s) {
                const double mid = 0.5 * (cuts[s] + cuts[s + 1]);
                const double half = 0.5 * (cuts[s + 1] - cuts[s]);
                for (size_t q = 0; q < ts.nodes.size(); ++q) {
                    const double th = mid + half * ts.nodes[q];
                    const Vec2 u = unit_vec(th);
                    const Vec2 x{u.x * s0_radius, u.y * s0_radius};
                    const double w = ts.weights[q] * half;
                    accumulate(acc, t1, t2, x, v * Complex(w, 0));
                }
            }
        }
        return acc * Complex(pref, 0);
    }
};

RealMatrix extract_real(const ComplexMatrix& g, double* residual) {
    const double scale = std::max(1e-300, g.frobenius());
    const double imag = g.imag().max_abs();
    if (residual) *residual = imag / scale;
    return g.real();
}

}  // namespace

RealMatrix covariance(const OfbfSpec& spec, const Vec2& t1, const Vec2& t2,
                      const QuadratureConfig& cfg) {
    if (!std::isfinite(t1.x) || !std::isfinite(t1.y) || !std::isfinite(t2.x) ||
        !std::isfinite(t2.y))
        throw Error(ErrorKind::InvalidInput, "non-finite evaluation points");
    const bool zero1 = (spec.m() == 1) ? t1.x == 0 : (t1.x == 0 && t1.y == 0);
    const bool zero2 = (spec.m() == 1) ? t2.x == 0 : (t2.x == 0 && t2.y == 0);
    if (zero1 || zero2) return RealMatrix::zero(spec.n(), spec.n());

    Engine engine(spec, cfg);
    double residual = 0;
    RealMatrix g = extract_real(engine.evaluate(t1, t2), &residual);
    if (residual > 1e-6)
        throw Error(ErrorKind::NumericalFailure,
                    "imaginary residual " + std::to_string(residual) +
                        " exceeds bound; spherical Hermitian symmetry violated?");
    return g;
}

CovarianceResult covariance_checked(const OfbfSpec& spec, const Vec2& t1, const Vec2& t2,
                                    const QuadratureConfig& cfg) {
    CovarianceResult out;
    const bool zero1 = (spec.m() == 1) ? t1.x == 0 : (t1.x == 0 && t1.y == 0);
    const bool zero2 = (spec.m() == 1) ? t2.x == 0 : (t2.x == 0 && t2.y == 0);
    if (zero1 || zero2) {
        out.gamma = RealMatrix::zero(spec.n(), spec.n());
        return out;
    }
    RealMatrix prev = covariance(spec, t1, t2, cfg);
    for (int refine = 1; refine <= 4; ++refine) {
        QuadratureConfig fine = cfg;
        fine.refine_level = cfg.refine_level + refine;
        double residual = 0;
        Engine engine(spec, fine);
        RealMatrix next = extract_real(engine.evaluate(t1, t2), &residual);
        const double scale = std::max(1e-300, next.frobenius());
        out.error_estimate = (next - prev).frobenius() / scale;
        out.imag_residual = residual;
        out.gamma = next;
        if (out.error_estimate <= cfg.rel_tol) return out;
        prev = next;
    }
    throw Error(ErrorKind::QuadratureFailure,
                "radial refinement did not reach tolerance; achieved estimate " +
                    std::to_string(out.error_estimate));
}

RealMatrix structure_function(const OfbfSpec& spec, const Vec2& t1, const Vec2& t2,
                              const QuadratureConfig& cfg) {
    const RealMatrix g11 = covariance(spec, t1, t1, cfg);
    const RealMatrix g22 = covariance(spec, t2, t2, cfg);
    const RealMatrix g12 = covariance(spec, t1, t2, cfg);
    const RealMatrix g21 = covariance(spec, t2, t1, cfg);
    return g11 + g22 - g12 - g21;
}

double oss_check(const OfbfSpec& spec, double c, const std::vector<std::pair<Vec2, Vec2>>& pairs,
                 const QuadratureConfig& cfg) {
    if (!(c > 0)) throw Error(ErrorKind::InvalidInput, "scaling factor must be positive");
    const RealMatrix ce = mat_pow(spec.scaling.domain_exponent(), c);
    const RealMatrix ch = mat_pow(spec.scaling.range_exponent(), c);
    double worst = 0;
    for (const auto& [t1, t2] : pairs) {
        Vec2 s1, s2;
        if (spec.m() == 1) {
            s1 = {ce(0, 0) * t1.x, 0};
            s2 = {ce(0, 0) * t2.x, 0};
        } else {
            s1 = apply(ce, t1);
            s2 = apply(ce, t2);
        }
        const RealMatrix lhs = covariance(spec, s1, s2, cfg);
        const RealMatrix base = covariance(spec, t1, t2, cfg);
        const RealMatrix rhs = ch * base * ch.transpose();
        const double scale = std::max(1e-300, rhs.frobenius());
        worst = std::max(worst, (lhs - rhs).frobenius() / scale);
    }
    return worst;
}

// ---------------------------------------------------------------------------
// Exact polar-set measures and homogeneity
// ---------------------------------------------------------------------------

HermitianMatrix polar_set_measure(const OfbfSpec& spec, double r1, double r2, double theta1,
                                  double theta2) {
    if (!(0 < r1 && r1 < r2)) throw Error(ErrorKind::InvalidInput, "need 0 < r1 < r2");
    const Engine engine(spec, QuadratureConfig{});
    const auto& sph = spec.spherical;
    // Delta(region)
    ComplexMatrix dm(spec.n(), spec.n());
    auto in_region = [&](double th) {
        double t = std::fmod(th - theta1, kTwoPi);
        if (t < 0) t += kTwoPi;
        return t < theta2 - theta1 - 1e-15;
    };
    if (sph.variant() == measures::MeasureVariant::Atomic) {
        for (const auto& a : sph.atoms())
            if (spec.m() == 1 ? in_region(a.angle > 0 ? 0.0 : kPi) : in_region(a.angle))
                dm += a.value.matrix();
    } else if (sph.variant() == measures::MeasureVariant::Constant) {
        dm = sph.constant_value().matrix() * Complex(theta2 - theta1, 0);
    } else {
        const auto& bps = sph.breakpoints();
        for (size_t i = 0; i < bps.size(); ++i) {
            const double a = bps[i];
            const double b = (i + 1 < bps.size()) ? bps[i + 1] : bps.front() + kTwoPi;
            // overlap of [a, b) with [theta1, theta2) on the circle
            for (double shift : {0.0, kTwoPi, -kTwoPi}) {
                const double lo = std::max(a + shift, theta1);
                const double hi = std::min(b + shift, theta2);
                if (hi > lo) dm += sph.values()[i].matrix() * Complex(hi - lo, 0);
            }
        }
    }
    // radial factor: integral over tau in [r1, r2) of r^{-H} . r^{-H*} / r
    // in the eigenbasis of H (scalar E, so the substitution s = r^eta applies)
    const double eta = engine.eta;
    const double s1 = std::pow(r1, eta), s2 = std::pow(r2, eta);
    ComplexMatrix acc(spec.n(), spec.n());
    for (int k = 0; k < engine.basis.terms; ++k)
        for (int l = 0; l < engine.basis.terms; ++l) {
            const Complex z = engine.basis.lambda[k] + engine.basis.lambda[l];
            const Complex radial = (cpow(s1, -z) - cpow(s2, -z)) / z / eta;
            acc += (engine.basis.projector[k] * dm * transpose_cm(engine.basis.projector[l])) *
                   radial;
        }
    return HermitianMatrix(acc, 1e-8);
}

double homogeneity_check(const OfbfSpec& spec, double c) {
    if (!(c > 0)) throw Error(ErrorKind::InvalidInput, "scaling factor must be positive");
    const RealMatrix h = spec.scaling.range_exponent();
    const RealMatrix ch_inv = mat_pow(h, c).inverse();
    std::vector<std::pair<double, double>> radii{{0.5, 1.0}, {1.0, 3.0}};
    std::vector<std::pair<double, double>> regions;
    const auto& sph = spec.spherical;
    if (sph.variant() == measures::MeasureVariant::Atomic) {
        for (const auto& a : sph.atoms()) {
            const double th = (spec.m() == 1) ? (a.angle > 0 ? 0.0 : kPi) : a.angle;
            regions.emplace_back(th - 0.05, th + 0.05);
        }
    } else if (sph.variant() == measures::MeasureVariant::Constant) {
        regions.emplace_back(0.0, kTwoPi);
        regions.emplace_back(0.3, 1.1);
    } else {
        const auto& bps = sph.breakpoints();
        for (size_t i = 0; i < bps.size(); ++i) {
            const double a = bps[i];
            const double b = (i + 1 < bps.size()) ? bps[i + 1] : bps.front() + kTwoPi;
            regions.emplace_back(a, b);
        }
    }
    double worst = 0;
    for (const auto& [r1, r2] : radii)
        for (const auto& [t1, t2] : regions) {
            // c^{E*} A(r1, r2, T) = A(c r1, c r2, T) for scalar E
            const HermitianMatrix lhs = polar_set_measure(spec, c * r1, c * r2, t1, t2);
            const HermitianMatrix base = polar_set_measure(spec, r1, r2, t1, t2);
            const ComplexMatrix rhs =
                ComplexMatrix(ch_inv) * base.matrix() * ComplexMatrix(ch_inv.transpose());
            const double scale = std::max(1e-300, rhs.frobenius());
            worst = std::max(worst, (lhs.matrix() - rhs).frobenius() / scale);
        }
    return worst;
}

// ---------------------------------------------------------------------------
// OFBM density and tail integral
// ---------------------------------------------------------------------------

HermitianMatrix ofbm_density(const RealMatrix& h, const HermitianMatrix& aastar, double x) {
    if (x == 0) throw Error(ErrorKind::SingularPoint, "density is singular at 0");
    const int n = h.rows();
    if (aastar.dim() != n) throw Error(ErrorKind::InvalidInput, "dimension mismatch");
    const RealMatrix hp = h + RealMatrix::identity(n) * 0.5;
    const double xa = std::abs(x);
    const RealMatrix p = mat_pow(hp, 1.0 / xa);  // |x|^{-(H + I/2)}
    const ComplexMatrix core = (x > 0) ? aastar.matrix() : aastar.matrix().conj();
    return HermitianMatrix(ComplexMatrix(p) * core * ComplexMatrix(p.transpose()), 1e-9);
}

HermitianMatrix ofbm_tail_integral(const RealMatrix& h, const HermitianMatrix& aastar) {
    const double h_min = min_re_eig(h);
    if (!(h_min > 0)) throw Error(ErrorKind::InvalidInput, "H needs positive eigenvalues");
    // truncation: the integrand decays like x^{-2 h_min - 1}
    const double u_max = std::min(60.0, std::max(20.0, 23.0 / h_min));
    const auto& gl = quad::gauss_legendre(8);
    const int panels = 240;
    ComplexMatrix acc(h.rows(), h.rows());
    for (int p = 0; p < panels; ++p) {
        const double a = u_max * p / panels, b = u_max * (p + 1) / panels;
        for (size_t q = 0; q < gl.nodes.size(); ++q) {
            const double u = quad::map_node(gl.nodes[q], a, b);
            const double x = std::exp(u);
            // f(x) dx = f(e^u) e^u du
            const HermitianMatrix f = ofbm_density(h, aastar, x);
            acc += f.matrix() * Complex(gl.weights[q] * 0.5 * (b - a) * x, 0);
        }
    }
    return HermitianMatrix(acc, 1e-8);
}

// ---------------------------------------------------------------------------
// Grid assembly (OpenMP kernel + serial reference)
// ---------------------------------------------------------------------------

std::vector<RealMatrix> covariance_grid(const OfbfSpec& spec, const std::vector<Vec2>& points,
                                        const QuadratureConfig& cfg) {
    const int n = static_cast<int>(points.size());
    std::vector<RealMatrix> blocks(static_cast<size_t>(n) * n);
    std::vector<std::pair<int, int>> tasks;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) tasks.emplace_back(i, j);
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::int64_t t = 0; t < static_cast<std::int64_t>(tasks.size()); ++t) {
        const auto [i, j] = tasks[static_cast<size_t>(t)];
        const RealMatrix g = covariance(spec, points[i], points[j], cfg);
        blocks[static_cast<size_t>(i) * n + j] = g;
        if (i != j) blocks[static_cast<size_t>(j) * n + i] = g.transpose();
    }
    return blocks;
}

std::vector<RealMatrix> covariance_grid_serial(const OfbfSpec& spec,
                                               const std::vector<Vec2>& points,
                                               const QuadratureConfig& cfg) {
    const int n = static_cast<int>(points.size());
    std::vector<RealMatrix> blocks(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const RealMatrix g = covariance(spec, points[i], points[j], cfg);
            blocks[static_cast<size_t>(i) * n + j] = g;
            if (i != j) blocks[static_cast<size_t>(j) * n + i] = g.transpose();
        }
    return blocks;
}

}  // namespace ofbf::spectral
