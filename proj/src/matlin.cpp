#include "ofbf/matlin.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace ofbf {

namespace {

void check_dims(int rows, int cols) {
    if (rows < 1 || rows > kMaxDim || cols < 1 || cols > kMaxDim)
        throw Error(ErrorKind::UnsupportedDimension,
                    "matrix dimensions must be between 1 and " + std::to_string(kMaxDim));
}

}  // namespace

// ---------------------------------------------------------------------------
// RealMatrix
// ---------------------------------------------------------------------------

RealMatrix::RealMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_{} {
    check_dims(rows, cols);
}

RealMatrix::RealMatrix(int rows, int cols, std::initializer_list<double> entries)
    : rows_(rows), cols_(cols), a_{} {
    check_dims(rows, cols);
    if (static_cast<int>(entries.size()) != rows * cols)
        throw Error(ErrorKind::InvalidInput, "entry count does not match dimensions");
    std::copy(entries.begin(), entries.end(), a_.begin());
    for (double v : entries)
        if (!std::isfinite(v)) throw Error(ErrorKind::NotFinite, "non-finite matrix entry");
}

RealMatrix RealMatrix::identity(int dim) {
    RealMatrix m(dim, dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

RealMatrix RealMatrix::zero(int rows, int cols) { return RealMatrix(rows, cols); }

RealMatrix RealMatrix::diag(std::initializer_list<double> d) {
    RealMatrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    int i = 0;
    for (double v : d) m(i, i) = v, ++i;
    return m;
}

RealMatrix RealMatrix::transpose() const {
    RealMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

double RealMatrix::trace() const {
    double t = 0;
    for (int i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

double RealMatrix::det() const {
    if (!square()) throw Error(ErrorKind::InvalidInput, "determinant of non-square matrix");
    const RealMatrix& m = *this;
    switch (rows_) {
        case 1: return m(0, 0);
        case 2: return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
        case 3:
            return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
                   m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                   m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
        default: {
            double d = 0;
            for (int j = 0; j < 4; ++j) {
                RealMatrix minor(3, 3);
                for (int r = 1; r < 4; ++r) {
                    int cc = 0;
                    for (int c = 0; c < 4; ++c) {
                        if (c == j) continue;
                        minor(r - 1, cc++) = m(r, c);
                    }
                }
                d += ((j % 2) ? -1.0 : 1.0) * m(0, j) * minor.det();
            }
            return d;
        }
    }
}

RealMatrix RealMatrix::inverse() const {
    if (!square()) throw Error(ErrorKind::InvalidInput, "inverse of non-square matrix");
    const int n = rows_;
    double aug[kMaxDim][2 * kMaxDim] = {};
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug[i][j] = (*this)(i, j);
        aug[i][n + i] = 1.0;
    }
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(aug[r][col]) > std::abs(aug[piv][col])) piv = r;
        if (std::abs(aug[piv][col]) < 1e-300)
            throw Error(ErrorKind::SingularInput, "matrix is singular");
        if (piv != col)
            for (int j = 0; j < 2 * n; ++j) std::swap(aug[piv][j], aug[col][j]);
        const double inv = 1.0 / aug[col][col];
        for (int j = 0; j < 2 * n; ++j) aug[col][j] *= inv;
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = aug[r][col];
            if (f == 0.0) continue;
            for (int j = 0; j < 2 * n; ++j) aug[r][j] -= f * aug[col][j];
        }
    }
    RealMatrix out(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out(i, j) = aug[i][n + j];
    return out;
}

double RealMatrix::frobenius() const {
    double s = 0;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) s += (*this)(i, j) * (*this)(i, j);
    return std::sqrt(s);
}

double RealMatrix::max_abs() const {
    double s = 0;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) s = std::max(s, std::abs((*this)(i, j)));
    return s;
}

RealMatrix& RealMatrix::operator+=(const RealMatrix& o) {
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) (*this)(i, j) += o(i, j);
    return *this;
}

RealMatrix& RealMatrix::operator-=(const RealMatrix& o) {
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) (*this)(i, j) -= o(i, j);
    return *this;
}

RealMatrix& RealMatrix::operator*=(double s) {
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) (*this)(i, j) *= s;
    return *this;
}

RealMatrix operator*(const RealMatrix& a, const RealMatrix& b) {
    if (a.cols() != b.rows()) throw Error(ErrorKind::InvalidInput, "dimension mismatch");
    RealMatrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

std::ostream& operator<<(std::ostream& os, const RealMatrix& m) {
    os << "[";
    for (int i = 0; i < m.rows(); ++i) {
        os << (i ? "; " : "");
        for (int j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j);
    }
    return os << "]";
}

// ---------------------------------------------------------------------------
// ComplexMatrix
// ---------------------------------------------------------------------------

ComplexMatrix::ComplexMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_{} {
    check_dims(rows, cols);
}

ComplexMatrix::ComplexMatrix(int rows, int cols, std::initializer_list<Complex> entries)
    : rows_(rows), cols_(cols), a_{} {
    check_dims(rows, cols);
    if (static_cast<int>(entries.size()) != rows * cols)
        throw Error(ErrorKind::InvalidInput, "entry count does not match dimensions");
    std::copy(entries.begin(), entries.end(), a_.begin());
}

ComplexMatrix::ComplexMatrix(const RealMatrix& re) : rows_(re.rows()), cols_(re.cols()), a_{} {
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) (*this)(i, j) = re(i, j);
}

ComplexMatrix::ComplexMatrix(const RealMatrix& re, const RealMatrix& im)
    : rows_(re.rows()), cols_(re.cols()), a_{} {
    if (im.rows() != rows_ || im.cols() != cols_)
        throw Error(ErrorKind::InvalidInput, "real/imaginary shape mismatch");
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) (*this)(i, j) = Complex(re(i, j), im(i, j));
}

ComplexMatrix ComplexMatrix::identity(int dim) {
    ComplexMatrix m(dim, dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

RealMatrix ComplexMatrix::real() const {
    RealMatrix r(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j).real();
    return r;
}

RealMatrix ComplexMatrix::imag() const {
    RealMatrix r(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j).imag();
    return r;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t(j, i) = std::conj((*this)(i, j));
    return t;
}

ComplexMatrix ComplexMatrix::conj() const {
    ComplexMatrix t(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t(i, j) = std::conj((*this)(i, j));
    return t;
}

double ComplexMatrix::frobenius() const {
    double s = 0;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) s += std::norm((*this)(i, j));
    return std::sqrt(s);
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) (*this)(i, j) += o(i, j);
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) (*this)(i, j) -= o(i, j);
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) (*this)(i, j) *= s;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw Error(ErrorKind::InvalidInput, "dimension mismatch");
    ComplexMatrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

// ---------------------------------------------------------------------------
// Small symmetric eigen solvers
// ---------------------------------------------------------------------------

Eig2Sym eig2_sym(const RealMatrix& m, double sym_tol) {
    if (m.rows() != 2 || m.cols() != 2)
        throw Error(ErrorKind::InvalidInput, "eig2_sym requires a 2x2 matrix");
    const double scale = std::max(1.0, m.max_abs());
    if (std::abs(m(0, 1) - m(1, 0)) > sym_tol * scale)
        throw Error(ErrorKind::InvalidInput, "eig2_sym requires a symmetric matrix");
    const double a = m(0, 0), b = 0.5 * (m(0, 1) + m(1, 0)), c = m(1, 1);

    Eig2Sym out;
    const double mean = 0.5 * (a + c);
    const double halfdiff = 0.5 * (a - c);
    const double r = std::hypot(halfdiff, b);
    out.eig1 = mean + r;
    out.eig2 = mean - r;

    if (r <= 1e-15 * scale) {  // degenerate: canonical basis
        out.v1[0] = 1.0; out.v1[1] = 0.0;
        out.v2[0] = 0.0; out.v2[1] = 1.0;
        return out;
    }
    // Eigenvector for eig1; pick the better-conditioned formula.
    double vx, vy;
    if (halfdiff >= 0) {
        vx = halfdiff + r;
        vy = b;
    } else {
        vx = b;
        vy = r - halfdiff;
    }
    double n = std::hypot(vx, vy);
    if (n == 0) { vx = 1; vy = 0; n = 1; }
    vx /= n; vy /= n;
    // tie-break: first nonzero component positive
    if (vx < 0 || (vx == 0 && vy < 0)) { vx = -vx; vy = -vy; }
    out.v1[0] = vx; out.v1[1] = vy;
    // orthogonal complement with the same tie-break
    double wx = -vy, wy = vx;
    if (wx < 0 || (wx == 0 && wy < 0)) { wx = -wx; wy = -wy; }
    out.v2[0] = wx; out.v2[1] = wy;
    return out;
}

namespace {

// Cyclic Jacobi for real symmetric matrices up to 8x8 (the 8 covers the real
// embedding of 4x4 complex Hermitian matrices). Eigenvalues only.
void jacobi_eigenvalues(double a[8][8], int n, double* eigs) {
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
        if (off < 1e-30) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                if (std::abs(a[p][q]) < 1e-300) continue;
                const double theta = 0.5 * (a[q][q] - a[p][p]) / a[p][q];
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double cos = 1.0 / std::sqrt(t * t + 1.0);
                const double sin = t * cos;
                for (int k = 0; k < n; ++k) {
                    const double akp = a[k][p], akq = a[k][q];
                    a[k][p] = cos * akp - sin * akq;
                    a[k][q] = sin * akp + cos * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = cos * apk - sin * aqk;
                    a[q][k] = sin * apk + cos * aqk;
                }
            }
        }
    }
    for (int i = 0; i < n; ++i) eigs[i] = a[i][i];
}

}  // namespace

// ---------------------------------------------------------------------------
// HermitianMatrix
// ---------------------------------------------------------------------------

HermitianMatrix::HermitianMatrix(const ComplexMatrix& m, double tol) : dim_(m.rows()), m_(m) {
    if (m.rows() != m.cols()) throw Error(ErrorKind::InvalidInput, "Hermitian matrix must be square");
    const double scale = std::max(1.0, m.frobenius());
    if ((m - m.adjoint()).frobenius() > tol * scale)
        throw Error(ErrorKind::InvalidInput, "matrix is not Hermitian within tolerance");
    for (int i = 0; i < dim_; ++i) {
        m_(i, i) = Complex(m_(i, i).real(), 0.0);
        for (int j = i + 1; j < dim_; ++j) {
            const Complex v = 0.5 * (m_(i, j) + std::conj(m_(j, i)));
            m_(i, j) = v;
            m_(j, i) = std::conj(v);
        }
    }
    compute_eig_bounds();
}

HermitianMatrix::HermitianMatrix(const RealMatrix& m, double tol)
    : HermitianMatrix(ComplexMatrix(m), tol) {}

HermitianMatrix HermitianMatrix::identity(int dim) {
    return HermitianMatrix(ComplexMatrix::identity(dim));
}

HermitianMatrix HermitianMatrix::zero(int dim) {
    return HermitianMatrix(ComplexMatrix(dim, dim));
}

HermitianMatrix HermitianMatrix::gram(const ComplexMatrix& a) {
    return HermitianMatrix(a * a.adjoint());
}

bool HermitianMatrix::is_real(double tol) const {
    return m_.imag().max_abs() <= tol * std::max(1.0, m_.frobenius());
}

bool HermitianMatrix::psd(double tol) const {
    return min_eig_ >= -tol * std::max(1.0, max_eig_);
}

bool HermitianMatrix::pd(double tol) const {
    return min_eig_ > tol * std::max(1.0, std::abs(max_eig_));
}

HermitianMatrix HermitianMatrix::scaled(double s) const {
    if (s < 0) throw Error(ErrorKind::InvalidInput, "negative scaling of a Hermitian value");
    HermitianMatrix out(*this);
    out.m_ *= s;
    out.min_eig_ *= s;
    out.max_eig_ *= s;
    return out;
}

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
    return HermitianMatrix(a.matrix() + b.matrix());
}

void HermitianMatrix::compute_eig_bounds() {
    if (dim_ == 1) {
        min_eig_ = max_eig_ = m_(0, 0).real();
        return;
    }
    if (dim_ == 2) {
        const double a = m_(0, 0).real(), c = m_(1, 1).real();
        const double b2 = std::norm(m_(0, 1));
        const double mean = 0.5 * (a + c);
        const double r = std::sqrt(0.25 * (a - c) * (a - c) + b2);
        min_eig_ = mean - r;
        max_eig_ = mean + r;
        return;
    }
    // dims 3-4: real embedding [[Re, -Im], [Im, Re]] doubles each eigenvalue
    double emb[8][8] = {};
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) {
            emb[i][j] = m_(i, j).real();
            emb[i + dim_][j + dim_] = m_(i, j).real();
            emb[i][j + dim_] = -m_(i, j).imag();
            emb[i + dim_][j] = m_(i, j).imag();
        }
    double eigs[8];
    jacobi_eigenvalues(emb, 2 * dim_, eigs);
    min_eig_ = *std::min_element(eigs, eigs + 2 * dim_);
    max_eig_ = *std::max_element(eigs, eigs + 2 * dim_);
}

bool is_psd(const HermitianMatrix& m, double tol) { return m.psd(tol); }

// ---------------------------------------------------------------------------
// Matrix exponential / powers
// ---------------------------------------------------------------------------

namespace {

// Even/odd exponential series in delta = -det(B) for traceless 2x2 B:
//   exp(B) = C(delta) I + S(delta) B
// with C = cosh(sqrt(delta)) and S = sinh(sqrt(delta))/sqrt(delta) for
// delta > 0, the analogous cos/sinc pair for delta < 0. Both are entire
// functions of delta, so a single series handles the sign change.
void cs_funcs(double delta, double& c, double& s) {
    if (std::abs(delta) < 1e-6) {
        c = 1.0 + delta * (0.5 + delta * (1.0 / 24.0 + delta / 720.0));
        s = 1.0 + delta * (1.0 / 6.0 + delta * (1.0 / 120.0 + delta / 5040.0));
    } else if (delta > 0) {
        const double q = std::sqrt(delta);
        c = std::cosh(q);
        s = std::sinh(q) / q;
    } else {
        const double w = std::sqrt(-delta);
        c = std::cos(w);
        s = std::sin(w) / w;
    }
}

RealMatrix exp2x2(const RealMatrix& a) {
    const double half_tr = 0.5 * a.trace();
    RealMatrix b = a;
    b(0, 0) -= half_tr;
    b(1, 1) -= half_tr;
    const double delta = -b.det();
    double c, s;
    cs_funcs(delta, c, s);
    RealMatrix out = RealMatrix::identity(2) * c + b * s;
    return out * std::exp(half_tr);
}

// Pade [6/6] approximant of exp(A) for ||A|| <= 0.5, used with scaling and
// squaring for dims 3-4.
RealMatrix exp_pade6(const RealMatrix& a) {
    static const double b[7] = {665280, 332640, 75600, 10080, 840, 42, 1};
    const int n = a.rows();
    RealMatrix a2 = a * a;
    RealMatrix a4 = a2 * a2;
    RealMatrix a6 = a4 * a2;
    RealMatrix even = RealMatrix::identity(n) * b[0] + a2 * b[2] + a4 * b[4] + a6 * b[6];
    RealMatrix odd = a * (RealMatrix::identity(n) * b[1] + a2 * b[3] + a4 * b[5]);
    RealMatrix num = even + odd;
    RealMatrix den = even - odd;
    return den.inverse() * num;
}

}  // namespace

RealMatrix mat_exp(const RealMatrix& m) {
    if (!m.square()) throw Error(ErrorKind::InvalidInput, "mat_exp requires a square matrix");
    const int n = m.rows();
    if (n == 1) {
        RealMatrix out(1, 1);
        out(0, 0) = std::exp(m(0, 0));
        return out;
    }
    if (n == 2) return exp2x2(m);
    int squarings = 0;
    double norm = m.max_abs() * n;
    RealMatrix scaled = m;
    while (norm > 0.5 && squarings < 60) {
        scaled *= 0.5;
        norm *= 0.5;
        ++squarings;
    }
    RealMatrix e = exp_pade6(scaled);
    for (int i = 0; i < squarings; ++i) e = e * e;
    return e;
}

RealMatrix mat_pow(const RealMatrix& m, double c) {
    if (!m.square()) throw Error(ErrorKind::InvalidInput, "mat_pow requires a square matrix");
    if (!(c > 0.0)) throw Error(ErrorKind::InvalidInput, "mat_pow requires c > 0");
    if (c == 1.0) return RealMatrix::identity(m.rows());
    return mat_exp(m * std::log(c));
}

RealMatrix pd_sqrt(const HermitianMatrix& m) {
    if (!m.is_real())
        throw Error(ErrorKind::InvalidInput, "pd_sqrt requires a real symmetric matrix");
    if (m.min_eig() <= 1e-12 * std::max(1.0, m.max_eig()))
        throw Error(ErrorKind::SingularInput, "pd_sqrt requires a positive definite matrix");
    const RealMatrix re = m.real();
    const int n = m.dim();
    if (n == 1) {
        RealMatrix out(1, 1);
        out(0, 0) = std::sqrt(re(0, 0));
        return out;
    }
    if (n == 2) {
        const Eig2Sym e = eig2_sym(re);
        const double s1 = std::sqrt(e.eig1), s2 = std::sqrt(e.eig2);
        RealMatrix out(2, 2);
        out(0, 0) = s1 * e.v1[0] * e.v1[0] + s2 * e.v2[0] * e.v2[0];
        out(0, 1) = s1 * e.v1[0] * e.v1[1] + s2 * e.v2[0] * e.v2[1];
        out(1, 0) = out(0, 1);
        out(1, 1) = s1 * e.v1[1] * e.v1[1] + s2 * e.v2[1] * e.v2[1];
        return out;
    }
    // dims 3-4: Denman-Beavers iteration (converges quadratically for PD input)
    RealMatrix y = re;
    RealMatrix z = RealMatrix::identity(n);
    for (int it = 0; it < 60; ++it) {
        RealMatrix yn = (y + z.inverse()) * 0.5;
        RealMatrix zn = (z + y.inverse()) * 0.5;
        const double change = (yn - y).max_abs();
        y = yn;
        z = zn;
        if (change < 1e-15 * std::max(1.0, y.max_abs())) break;
    }
    // symmetrize
    y = (y + y.transpose()) * 0.5;
    return y;
}

ComplexMatrix hermitian_sqrt(const HermitianMatrix& m) {
    const int n = m.dim();
    if (!m.psd(1e-12)) throw Error(ErrorKind::SingularInput, "hermitian_sqrt requires PSD input");
    if (n == 1) {
        ComplexMatrix out(1, 1);
        out(0, 0) = std::sqrt(std::max(0.0, m(0, 0).real()));
        return out;
    }
    if (n != 2) throw Error(ErrorKind::UnsupportedDimension, "hermitian_sqrt supports dims 1-2");
    // closed-form 2x2 Hermitian eigendecomposition
    const double a = m(0, 0).real(), c = m(1, 1).real();
    const Complex b = m(0, 1);
    const double mean = 0.5 * (a + c);
    const double r = std::sqrt(0.25 * (a - c) * (a - c) + std::norm(b));
    const double l1 = std::max(0.0, mean + r), l2 = std::max(0.0, mean - r);
    if (r <= 1e-15 * std::max(1.0, std::abs(mean))) {
        ComplexMatrix out = ComplexMatrix::identity(2);
        out *= std::sqrt(std::max(0.0, mean));
        return out;
    }
    // eigenvector for l1: (b, l1 - a) or (l1 - c, b)
    Complex u0, u1;
    if (std::abs(l1 - a) > std::abs(l1 - c)) {
        u0 = b;
        u1 = Complex(l1 - a, 0.0);
    } else {
        u0 = Complex(l1 - c, 0.0);
        u1 = std::conj(b);
    }
    const double nn = std::sqrt(std::norm(u0) + std::norm(u1));
    u0 /= nn; u1 /= nn;
    // P1 = u u*, P2 = I - P1; sqrt = sqrt(l1) P1 + sqrt(l2) P2
    ComplexMatrix p1(2, 2);
    p1(0, 0) = u0 * std::conj(u0);
    p1(0, 1) = u0 * std::conj(u1);
    p1(1, 0) = u1 * std::conj(u0);
    p1(1, 1) = u1 * std::conj(u1);
    ComplexMatrix p2 = ComplexMatrix::identity(2) - p1;
    return std::sqrt(l1) * p1 + std::sqrt(l2) * p2;
}

Eig2General eig2_general(const RealMatrix& m) {
    if (!m.square() || m.rows() > 2)
        throw Error(ErrorKind::InvalidInput, "eig2_general requires a 1x1 or 2x2 matrix");
    Eig2General out;
    if (m.rows() == 1) {
        out.lambda1 = out.lambda2 = m(0, 0);
        return out;
    }
    const double tr = m.trace(), det = m.det();
    const double disc = tr * tr - 4.0 * det;
    if (disc >= 0) {
        const double sq = std::sqrt(disc);
        out.lambda1 = 0.5 * (tr + sq);
        out.lambda2 = 0.5 * (tr - sq);
    } else {
        const double sq = std::sqrt(-disc);
        out.lambda1 = Complex(0.5 * tr, 0.5 * sq);
        out.lambda2 = Complex(0.5 * tr, -0.5 * sq);
    }
    return out;
}

double min_re_eig(const RealMatrix& m) {
    const Eig2General e = eig2_general(m);
    return std::min(e.lambda1.real(), e.lambda2.real());
}

double max_re_eig(const RealMatrix& m) {
    const Eig2General e = eig2_general(m);
    return std::max(e.lambda1.real(), e.lambda2.real());
}

PowerBasis power_basis(const RealMatrix& m) {
    if (!m.square() || m.rows() > 2)
        throw Error(ErrorKind::InvalidInput, "power_basis requires a 1x1 or 2x2 matrix");
    PowerBasis out;
    out.dim = m.rows();
    if (m.rows() == 1) {
        out.terms = 1;
        out.lambda[0] = m(0, 0);
        out.projector[0] = ComplexMatrix::identity(1);
        return out;
    }
    const Eig2General e = eig2_general(m);
    const double scale = std::max(1.0, m.max_abs());
    if (std::abs(e.lambda1 - e.lambda2) <= 1e-12 * scale) {
        // equal eigenvalues: must be a scalar matrix (defective matrices are
        // outside the supported class)
        RealMatrix dev = m - RealMatrix::identity(2) * (0.5 * m.trace());
        if (dev.max_abs() > 1e-10 * scale)
            throw Error(ErrorKind::InvalidInput,
                        "matrix with a repeated eigenvalue must be scalar (defective input)");
        out.terms = 1;
        out.lambda[0] = e.lambda1;
        out.projector[0] = ComplexMatrix::identity(2);
        return out;
    }
    out.terms = 2;
    out.lambda[0] = e.lambda1;
    out.lambda[1] = e.lambda2;
    const ComplexMatrix cm(m);
    const ComplexMatrix id = ComplexMatrix::identity(2);
    const Complex den = e.lambda1 - e.lambda2;
    out.projector[0] = (cm - e.lambda2 * id) * (1.0 / den);
    out.projector[1] = (cm - e.lambda1 * id) * (1.0 / -den);
    return out;
}

}  // namespace ofbf
