#pragma once

// Small dense matrix kernel (dimensions up to 4): arithmetic, Hermitian
// structure, 2x2 eigendecompositions, matrix powers c^M and PD square roots.

#include <array>
#include <complex>
#include <initializer_list>
#include <iosfwd>

#include "ofbf/error.hpp"

namespace ofbf {

inline constexpr int kMaxDim = 4;

class RealMatrix {
  public:
    RealMatrix() : rows_(0), cols_(0), a_{} {}
    RealMatrix(int rows, int cols);
    RealMatrix(int rows, int cols, std::initializer_list<double> entries);

    static RealMatrix identity(int dim);
    static RealMatrix zero(int rows, int cols);
    static RealMatrix diag(std::initializer_list<double> d);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    double& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    RealMatrix transpose() const;
    double trace() const;
    double det() const;
    RealMatrix inverse() const;  // partial-pivot Gauss-Jordan, dims <= 4
    double frobenius() const;
    double max_abs() const;

    RealMatrix& operator+=(const RealMatrix& o);
    RealMatrix& operator-=(const RealMatrix& o);
    RealMatrix& operator*=(double s);

    friend RealMatrix operator+(RealMatrix a, const RealMatrix& b) { return a += b; }
    friend RealMatrix operator-(RealMatrix a, const RealMatrix& b) { return a -= b; }
    friend RealMatrix operator*(RealMatrix a, double s) { return a *= s; }
    friend RealMatrix operator*(double s, RealMatrix a) { return a *= s; }
    friend RealMatrix operator*(const RealMatrix& a, const RealMatrix& b);

  private:
    int rows_, cols_;
    std::array<double, kMaxDim * kMaxDim> a_;
};

std::ostream& operator<<(std::ostream& os, const RealMatrix& m);

using Complex = std::complex<double>;

class ComplexMatrix {
  public:
    ComplexMatrix() : rows_(0), cols_(0), a_{} {}
    ComplexMatrix(int rows, int cols);
    ComplexMatrix(int rows, int cols, std::initializer_list<Complex> entries);
    explicit ComplexMatrix(const RealMatrix& re);
    ComplexMatrix(const RealMatrix& re, const RealMatrix& im);

    static ComplexMatrix identity(int dim);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Complex& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    Complex operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    RealMatrix real() const;
    RealMatrix imag() const;
    ComplexMatrix adjoint() const;  // conjugate transpose
    ComplexMatrix conj() const;
    double frobenius() const;

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(Complex s);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

  private:
    int rows_, cols_;
    std::array<Complex, kMaxDim * kMaxDim> a_;
};

// Hermitian matrix with exact structural symmetry: construction checks
// ||M - M*|| <= 1e-12 * scale, then symmetrizes so that the real part is
// exactly symmetric and the imaginary part exactly skew.
class HermitianMatrix {
  public:
    HermitianMatrix() : dim_(0) {}
    explicit HermitianMatrix(const ComplexMatrix& m, double tol = 1e-12);
    explicit HermitianMatrix(const RealMatrix& m, double tol = 1e-12);

    static HermitianMatrix identity(int dim);
    static HermitianMatrix zero(int dim);
    // Gram matrix A A*, PSD by construction.
    static HermitianMatrix gram(const ComplexMatrix& a);

    int dim() const { return dim_; }
    const ComplexMatrix& matrix() const { return m_; }
    Complex operator()(int i, int j) const { return m_(i, j); }

    RealMatrix real() const { return m_.real(); }
    RealMatrix imag() const { return m_.imag(); }
    bool is_real(double tol = 1e-14) const;

    double min_eig() const { return min_eig_; }
    double max_eig() const { return max_eig_; }
    bool psd(double tol = 1e-10) const;
    bool pd(double tol = 1e-12) const;

    HermitianMatrix scaled(double s) const;
    friend HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b);

  private:
    void compute_eig_bounds();

    int dim_;
    ComplexMatrix m_;
    double min_eig_ = 0.0, max_eig_ = 0.0;
};

struct Eig2Sym {
    double eig1, eig2;           // descending
    double v1[2], v2[2];         // orthonormal, first nonzero component positive
};

// Exact closed-form eigendecomposition of a 2x2 real symmetric matrix.
Eig2Sym eig2_sym(const RealMatrix& m, double sym_tol = 1e-12);

// exp(M log c): closed form via trace/determinant for dims 1-2, Pade
// order 6 with scaling-and-squaring for dims 3-4.
RealMatrix mat_pow(const RealMatrix& m, double c);
RealMatrix mat_exp(const RealMatrix& m);

// Symmetric PD square root of a real symmetric positive definite matrix.
RealMatrix pd_sqrt(const HermitianMatrix& m);

// Hermitian PSD square root (complex), dims <= 2.
ComplexMatrix hermitian_sqrt(const HermitianMatrix& m);

bool is_psd(const HermitianMatrix& m, double tol = 1e-10);

// Eigenvalues of a real square matrix, dims 1-2 (closed form; complex pairs).
struct Eig2General {
    Complex lambda1, lambda2;
};
Eig2General eig2_general(const RealMatrix& m);
double min_re_eig(const RealMatrix& m);
double max_re_eig(const RealMatrix& m);

// Spectral decomposition s^{-M} = sum_k s^{-lambda_k} P_k for a real 2x2 (or
// 1x1) matrix with distinct eigenvalues or M = lambda I. Defective inputs are
// rejected.
struct PowerBasis {
    int dim = 0;
    int terms = 0;                       // 1 or 2
    Complex lambda[2];
    ComplexMatrix projector[2];
};
PowerBasis power_basis(const RealMatrix& m);

}  // namespace ofbf
