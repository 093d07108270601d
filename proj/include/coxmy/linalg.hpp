#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "coxmy/errors.hpp"

namespace coxmy {

// Dense real matrix, row-major. Sizes here are tiny (order <= b*k + a few),
// so O(n^3) algorithms throughout.
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    Matrix(std::size_t rows, std::size_t cols, std::initializer_list<double> entries);

    static Matrix identity(std::size_t n);
    static Matrix diagonal(const std::vector<double>& d);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Matrix transpose() const;
    Matrix operator*(const Matrix& rhs) const;
    Matrix operator+(const Matrix& rhs) const;
    Matrix operator-(const Matrix& rhs) const;
    Matrix scaled(double s) const;

    double max_abs() const;
    const std::vector<double>& data() const { return data_; }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

struct EigenPair {
    double value = 0.0;
    std::vector<double> left_vector;  // normalized to sum 1 when nonnegative
};

// Gaussian elimination with partial pivoting. Throws SingularMatrix when a
// pivot falls below 1e-12 relative to the largest row magnitude.
Matrix invert(const Matrix& m);

// Solves a*x = b for square nonsingular a.
std::vector<double> solve(const Matrix& a, const std::vector<double>& b);

// Solves x*a = b (left system), used for stationary-style relations.
std::vector<double> solve_left(const Matrix& a, const std::vector<double>& b);

// Perron eigenpair of a nonnegative matrix by power iteration on the left.
EigenPair dominant_left_eigenpair(const Matrix& m, double tol = 1e-12, long max_iter = 100000);

std::vector<double> mat_vec(const Matrix& m, const std::vector<double>& v);
std::vector<double> vec_mat(const std::vector<double>& v, const Matrix& m);

}  // namespace coxmy
