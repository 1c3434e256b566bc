#include "ofbf/polar.hpp"

#include <cmath>

#include "ofbf/quadrature.hpp"

namespace ofbf::polar {

PolarSystem::PolarSystem(const RealMatrix& e, int quad_panels, int quad_order)
    : e_(e), panels_(quad_panels), order_(quad_order) {
    if (!e.square() || e.rows() > 2)
        throw Error(ErrorKind::UnsupportedDimension, "polar systems support dimensions 1 and 2");
    rho_min_ = min_re_eig(e_);
    if (!(rho_min_ > 0))
        throw Error(ErrorKind::InvalidInput, "domain exponent must have eigenvalues with positive real part");
    if (e_.rows() == 1) {
        scalar_ = true;
        eta_ = e_(0, 0);
    } else {
        RealMatrix dev = e_ - RealMatrix::identity(2) * (0.5 * e_.trace());
        if (dev.max_abs() <= 1e-14 * std::max(1.0, e_.max_abs())) {
            scalar_ = true;
            eta_ = 0.5 * e_.trace();
        }
    }
}

double PolarSystem::norm0(const Vec2& x) const {
    const double nx = (dim() == 1) ? std::abs(x.x) : x.norm();
    if (nx == 0) throw Error(ErrorKind::ZeroVector, "norm0 of the zero vector");
    if (scalar_) return nx / eta_;

    // int_0^1 ||t^E x|| dt/t  ==  int_0^inf ||exp(-uE) x|| du  (t = e^{-u})
    const double u_max = 45.0 / rho_min_;
    const auto& rule = quad::gauss_legendre(order_);
    double total = 0;
    const double w = u_max / panels_;
    for (int p = 0; p < panels_; ++p) {
        const double a = p * w, b = a + w;
        double acc = 0;
        for (size_t q = 0; q < rule.nodes.size(); ++q) {
            const double u = quad::map_node(rule.nodes[q], a, b);
            const RealMatrix m = mat_exp(e_ * (-u));
            acc += rule.weights[q] * apply(m, x).norm();
        }
        total += acc * 0.5 * (b - a);
    }
    return total;
}

PolarDecomposition PolarSystem::decompose(const Vec2& x) const {
    const double nx = (dim() == 1) ? std::abs(x.x) : x.norm();
    if (nx == 0) throw Error(ErrorKind::ZeroVector, "polar decomposition of the zero vector");
    PolarDecomposition out;
    if (scalar_) {
        // ||x||_0 = ||x|| / eta, so tau = (||x||/eta)^{1/eta} and l = tau^{-eta} x
        out.tau = std::pow(nx / eta_, 1.0 / eta_);
        const double s = std::pow(out.tau, -eta_);
        out.l = {x.x * s, x.y * s};
        return out;
    }
    // Monotone bisection on c -> ||c^{-E} x||_0 over [1e-8, 1e8] in log scale.
    double lo = std::log(1e-8), hi = std::log(1e8);
    auto g = [&](double logc) {
        const RealMatrix m = mat_pow(e_, std::exp(-logc));  // c^{-E} = (1/c)^{E}
        return norm0(apply(m, x)) - 1.0;
    };
    double glo = g(lo), ghi = g(hi);
    if (!(glo > 0 && ghi < 0))
        throw Error(ErrorKind::NumericalFailure, "polar bisection bracket failure");
    double mid = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        mid = 0.5 * (lo + hi);
        const double gm = g(mid);
        if (std::abs(gm) < 1e-13 || hi - lo < 1e-15) break;
        if (gm > 0) lo = mid; else hi = mid;
    }
    out.tau = std::exp(mid);
    const RealMatrix m = mat_pow(e_, 1.0 / out.tau);
    out.l = apply(m, x);
    return out;
}

Vec2 PolarSystem::s0_point(double angle) const {
    if (dim() != 2) throw Error(ErrorKind::UnsupportedDimension, "s0_point requires dimension 2");
    const Vec2 u = unit_vec(angle);
    const double n0 = norm0(u);
    return {u.x / n0, u.y / n0};
}

}  // namespace ofbf::polar
