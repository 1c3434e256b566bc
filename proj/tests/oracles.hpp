#pragma once

// Independent oracles used by the test suites. These deliberately avoid the
// library's own algorithms: the matrix exponential is a plain scaled Taylor
// series, and the radial integrals come from Gamma-function closed forms.

#include <cmath>
#include <complex>

#include "ofbf/matlin.hpp"

namespace oracles {

using ofbf::Complex;
using ofbf::RealMatrix;

// exp(M) by scaling, straight Taylor summation, and repeated squaring.
inline RealMatrix taylor_exp(const RealMatrix& m) {
    const int n = m.rows();
    int squarings = 0;
    RealMatrix scaled = m;
    while (scaled.max_abs() * n > 0.25) {
        scaled *= 0.5;
        ++squarings;
    }
    RealMatrix sum = RealMatrix::identity(n);
    RealMatrix term = RealMatrix::identity(n);
    for (int k = 1; k < 60; ++k) {
        term = term * scaled;
        term *= 1.0 / k;
        sum += term;
        if (term.max_abs() < 1e-22) break;
    }
    for (int i = 0; i < squarings; ++i) sum = sum * sum;
    return sum;
}

// Lanczos approximation of Gamma(z) for complex z (g = 7, 9 terms).
inline Complex gamma_complex(Complex z) {
    static const double c[9] = {0.99999999999980993,  676.5203681218851,   -1259.1392167224028,
                                771.32342877765313,   -176.61502916214059, 12.507343278686905,
                                -0.13857109526572012, 9.9843695780195716e-6,
                                1.5056327351493116e-7};
    if (z.real() < 0.5) {
        // reflection
        return M_PI / (std::sin(M_PI * z) * gamma_complex(1.0 - z));
    }
    z -= 1.0;
    Complex x = c[0];
    for (int i = 1; i < 9; ++i) x += c[i] / (z + static_cast<double>(i));
    const Complex t = z + 7.5;
    return std::sqrt(2.0 * M_PI) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

// int_0^inf (1 - cos u) u^{-z-1} du = pi / (2 Gamma(1+z) sin(pi z / 2))
inline Complex c_phi(Complex z) {
    return M_PI / (2.0 * gamma_complex(z + 1.0) * std::sin(0.5 * M_PI * z));
}

// int_0^inf sin(u) u^{-z-1} du = pi / (2 Gamma(1+z) cos(pi z / 2)); pole at
// z = 1 (the combinations used below vanish there)
inline Complex c_psi(Complex z) {
    return M_PI / (2.0 * gamma_complex(z + 1.0) * std::cos(0.5 * M_PI * z));
}

inline Complex signed_pow(double c, Complex z) {
    if (c == 0) return 0.0;
    const Complex mag = std::exp(z * std::log(std::abs(c)));
    return c > 0 ? mag : -mag;
}

inline Complex abs_pow(double c, Complex z) {
    if (c == 0) return 0.0;
    return std::exp(z * std::log(std::abs(c)));
}

// Closed form of int_0^inf (e^{i a s} - 1)(e^{-i b s} - 1) s^{-z-1} ds for
// 0 < Re z < 2 (avoid the removable point z = 1 for the imaginary part).
inline Complex radial_closed_form(double alpha, double beta, Complex z) {
    const Complex a = abs_pow(alpha, z) + abs_pow(beta, z) - abs_pow(alpha - beta, z);
    const Complex b =
        signed_pow(alpha - beta, z) - signed_pow(alpha, z) + signed_pow(beta, z);
    return c_phi(z) * a + Complex(0, 1) * c_psi(z) * b;
}

// fBm covariance sigma^2/2 (|s|^{2h} + |t|^{2h} - |s-t|^{2h}) with the
// spectral normalization sigma^2 = 4 a C_phi(2h) for atom weight a at +-1.
inline double fbm_covariance(double s, double t, double h, double atom_weight) {
    const double sigma2 = 4.0 * atom_weight * c_phi(Complex(2.0 * h, 0)).real();
    return 0.5 * sigma2 *
           (std::pow(std::abs(s), 2 * h) + std::pow(std::abs(t), 2 * h) -
            std::pow(std::abs(s - t), 2 * h));
}

}  // namespace oracles
