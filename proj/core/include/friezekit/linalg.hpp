#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "friezekit/errors.hpp"
#include "friezekit/rational.hpp"

namespace friezekit {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0)) : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    Matrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw UsageError("ragged matrix rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(a_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                          a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.cols_ != y.rows_) throw UsageError("matrix dimension mismatch");
    Matrix r(x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t k = 0; k < x.cols_; ++k) {
        if (x(i, k) == 0) continue;
        for (std::size_t j = 0; j < y.cols_; ++j) r(i, j) += x(i, k) * y(k, j);
      }
    return r;
  }

  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> a_;
};

using IntMatrix = Matrix<BigInt>;
using RatMatrix = Matrix<Rat>;

RatMatrix to_rat(const IntMatrix& m);
IntMatrix int_matrix(const std::vector<std::vector<int>>& rows);
std::string to_string(const IntMatrix& m);
std::string to_string(const RatMatrix& m);

// Bareiss fraction-free determinant.
BigInt determinant(const IntMatrix& m);
Rat determinant(const RatMatrix& m);

// Fraction-free Gauss-Jordan on [M | I]; throws UsageError if singular.
RatMatrix inverse(const IntMatrix& m);
RatMatrix inverse(const RatMatrix& m);

// Rank over Q: rows are scaled to integers, then fraction-free elimination.
std::size_t rank(const RatMatrix& m);

// Row Hermite normal form: U * M = H with U unimodular, H in echelon form with
// positive pivots and entries above each pivot reduced into [0, pivot).
struct HermiteForm {
  IntMatrix H;
  IntMatrix U;
  std::size_t rank = 0;
};
HermiteForm hermite_normal_form(const IntMatrix& m);

// Canonical basis (nonzero HNF rows) of the lattice spanned by the rows.
IntMatrix lattice_basis(const IntMatrix& rows);
bool same_lattice(const IntMatrix& a, const IntMatrix& b);

}  // namespace friezekit
