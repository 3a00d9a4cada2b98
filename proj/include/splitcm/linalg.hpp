#pragma once

#include "splitcm/arith.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace splitcm {

/// Dense row-major matrix over an exact ring.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }
  void set_row(std::size_t i, const std::vector<T>& r) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = r[j];
  }
  void swap_rows(std::size_t i, std::size_t k) {
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(i, j), (*this)(k, j));
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    Matrix r(x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t k = 0; k < x.cols_; ++k) {
        if (x(i, k) == 0) continue;
        for (std::size_t j = 0; j < y.cols_; ++j) r(i, j) += x(i, k) * y(k, j);
      }
    return r;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rat>;

RatMatrix to_rat(const IntMatrix& m);
/// Requires integral entries.
IntMatrix to_int(const RatMatrix& m);
/// Least common multiple of the denominators.
Int common_denominator(const RatMatrix& m);

struct HermiteForm {
  IntMatrix H;  // upper echelon; zero rows at the bottom
  IntMatrix U;  // unimodular, U * A == H
  std::size_t rank;
};

/// Row-style Hermite normal form: pivots positive, entries above a pivot in [0, pivot).
HermiteForm hermite_form(const IntMatrix& A);
/// The nonzero rows of the Hermite normal form.
IntMatrix hnf(const IntMatrix& A);
/// Basis (as rows) of {x in Z^m : x * A = 0}.
IntMatrix left_kernel(const IntMatrix& A);

/// Canonical basis of the Z-span of the rows of a rational matrix (rank must equal cols).
RatMatrix lattice_hnf(const RatMatrix& rows);

Rat determinant(RatMatrix m);
RatMatrix inverse(const RatMatrix& m);

std::string to_string(const RatMatrix& m);

}  // namespace splitcm
