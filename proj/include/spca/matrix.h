#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "spca/errors.h"

namespace spca {

// Dense row-major real matrix. Sized for the small problems this library
// handles (tens to a few hundred rows), so no blocking or expression magic.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix from_row_major(std::size_t rows, std::size_t cols,
                               std::vector<double> data);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  std::vector<double> column(std::size_t j) const;

  const std::vector<double>& data() const { return data_; }

  Matrix transpose() const;
  // Rows listed in `indices`, in that order.
  Matrix select_rows(std::span<const std::size_t> indices) const;
  // Principal submatrix on `indices`.
  Matrix principal(std::span<const std::size_t> indices) const;

  double max_abs() const;
  double trace() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(double alpha, const Matrix& a);

// A * A^T and A^T * A without forming the transpose.
Matrix gram_rows(const Matrix& a);
Matrix gram_cols(const Matrix& a);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

// Square matrix whose stored entries are exactly symmetric.
class SymmetricMatrix {
 public:
  // Throws NotSymmetric unless m(i,j) == m(j,i) bit for bit.
  explicit SymmetricMatrix(Matrix m);
  SymmetricMatrix(std::initializer_list<std::initializer_list<double>> rows)
      : SymmetricMatrix(Matrix(rows)) {}

  // Averages m and m^T; use only after an explicit tolerance check.
  static SymmetricMatrix symmetrize(const Matrix& m);

  std::size_t dim() const { return m_.rows(); }
  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  const Matrix& matrix() const { return m_; }
  SymmetricMatrix principal(std::span<const std::size_t> indices) const;

 private:
  struct Trusted {};
  SymmetricMatrix(Matrix m, Trusted) : m_(std::move(m)) {}
  Matrix m_;
};

}  // namespace spca
