#include "coxmy/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace coxmy {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::initializer_list<double> entries)
    : rows_(rows), cols_(cols), data_(entries) {
    if (data_.size() != rows * cols)
        throw DimensionMismatch("matrix initializer size does not match rows*cols");
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::diagonal(const std::vector<double>& d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    if (cols_ != rhs.rows_) throw DimensionMismatch("matrix product size mismatch");
    Matrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t l = 0; l < cols_; ++l) {
            const double a = (*this)(i, l);
            if (a == 0.0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(l, j);
        }
    return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw DimensionMismatch("matrix sum size mismatch");
    Matrix out = *this;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] += rhs.data_[i];
    return out;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw DimensionMismatch("matrix diff size mismatch");
    Matrix out = *this;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] -= rhs.data_[i];
    return out;
}

Matrix Matrix::scaled(double s) const {
    Matrix out = *this;
    for (auto& v : out.data_) v *= s;
    return out;
}

double Matrix::max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::fabs(v));
    return m;
}

namespace {

// LU factorization with partial pivoting, shared by invert/solve.
struct Lu {
    Matrix lu;
    std::vector<std::size_t> perm;
};

Lu factorize(const Matrix& a) {
    if (!a.square()) throw DimensionMismatch("factorization requires a square matrix");
    const std::size_t n = a.rows();
    Lu f{a, std::vector<std::size_t>(n)};
    std::iota(f.perm.begin(), f.perm.end(), std::size_t{0});

    const double scale = std::max(a.max_abs(), 1.0);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::fabs(f.lu(r, col)) > std::fabs(f.lu(piv, col))) piv = r;
        if (std::fabs(f.lu(piv, col)) < 1e-12 * scale)
            throw SingularMatrix("pivot below tolerance at column " + std::to_string(col));
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(f.lu(piv, j), f.lu(col, j));
            std::swap(f.perm[piv], f.perm[col]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            const double m = f.lu(r, col) / f.lu(col, col);
            f.lu(r, col) = m;
            for (std::size_t j = col + 1; j < n; ++j) f.lu(r, j) -= m * f.lu(col, j);
        }
    }
    return f;
}

std::vector<double> lu_solve(const Lu& f, const std::vector<double>& b) {
    const std::size_t n = f.lu.rows();
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[f.perm[i]];
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) x[i] -= f.lu(i, j) * x[j];
    for (std::size_t ii = n; ii-- > 0;) {
        for (std::size_t j = ii + 1; j < n; ++j) x[ii] -= f.lu(ii, j) * x[j];
        x[ii] /= f.lu(ii, ii);
    }
    return x;
}

}  // namespace

Matrix invert(const Matrix& m) {
    const Lu f = factorize(m);
    const std::size_t n = m.rows();
    Matrix inv(n, n);
    std::vector<double> e(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        e[j] = 1.0;
        const std::vector<double> col = lu_solve(f, e);
        e[j] = 0.0;
        for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
    }
    return inv;
}

std::vector<double> solve(const Matrix& a, const std::vector<double>& b) {
    if (b.size() != a.rows()) throw DimensionMismatch("rhs length does not match matrix order");
    return lu_solve(factorize(a), b);
}

std::vector<double> solve_left(const Matrix& a, const std::vector<double>& b) {
    return solve(a.transpose(), b);
}

std::vector<double> mat_vec(const Matrix& m, const std::vector<double>& v) {
    if (v.size() != m.cols()) throw DimensionMismatch("vector length does not match matrix cols");
    std::vector<double> out(m.rows(), 0.0);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * v[j];
    return out;
}

std::vector<double> vec_mat(const std::vector<double>& v, const Matrix& m) {
    if (v.size() != m.rows()) throw DimensionMismatch("vector length does not match matrix rows");
    std::vector<double> out(m.cols(), 0.0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (v[i] == 0.0) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) out[j] += v[i] * m(i, j);
    }
    return out;
}

EigenPair dominant_left_eigenpair(const Matrix& m, double tol, long max_iter) {
    if (!m.square()) throw DimensionMismatch("eigenpair requires a square matrix");
    const std::size_t n = m.rows();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (m(i, j) < 0.0) throw NegativeEntries("matrix has a negative entry");

    std::vector<double> v(n, 1.0 / static_cast<double>(n));
    double value = 0.0;
    for (long it = 0; it < max_iter; ++it) {
        std::vector<double> w = vec_mat(v, m);
        const double s = std::accumulate(w.begin(), w.end(), 0.0);
        if (s <= 0.0) throw NoConvergence("power iteration collapsed to zero", it, s);
        for (auto& x : w) x /= s;
        const std::vector<double> wm = vec_mat(w, m);
        value = std::accumulate(wm.begin(), wm.end(), 0.0);
        double res = 0.0;
        for (std::size_t j = 0; j < n; ++j) res = std::max(res, std::fabs(wm[j] - value * w[j]));
        v = std::move(w);
        if (res < tol) return {value, v};
    }
    throw NoConvergence("power iteration did not converge", max_iter, tol);
}

}  // namespace coxmy
