// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "tmds/gf.hpp"

namespace tmds {

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class SingularMatrix : public std::runtime_error {
 public:
  SingularMatrix(std::size_t pivot_row, std::size_t rank)
      : std::runtime_error("singular matrix: no pivot at row " + std::to_string(pivot_row)),
        pivot_row_(pivot_row),
        rank_(rank) {}
  std::size_t pivot_row() const { return pivot_row_; }
  std::size_t rank() const { return rank_; }

 private:
  std::size_t pivot_row_, rank_;
};

// Dense row-major matrix over a finite field.
class Matrix {
 public:
  Matrix() = default;
  Matrix(FieldPtr f, std::size_t rows, std::size_t cols)
      : f_(std::move(f)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static Matrix identity(FieldPtr f, std::size_t n);
  static Matrix from_rows(FieldPtr f, const std::vector<std::vector<Elem>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const FieldPtr& field() const { return f_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Elem& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Elem operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Elem* row(std::size_t r) { return data_.data() + r * cols_; }
  const Elem* row(std::size_t r) const { return data_.data() + r * cols_; }
  std::vector<Elem>& data() { return data_; }
  const std::vector<Elem>& data() const { return data_; }

  bool is_zero() const;
  std::size_t nonzeros() const;
  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  Matrix transpose() const;
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b);
  // this(r0.., c0..) += b
  void add_block(std::size_t r0, std::size_t c0, const Matrix& b);
  Matrix select_rows(const std::vector<std::size_t>& idx) const;
  Matrix select_cols(const std::vector<std::size_t>& idx) const;

  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator*(const Matrix& o) const;
  Matrix scaled(Elem c) const;
  Matrix negated() const;

  std::string to_string() const;

 private:
  FieldPtr f_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Elem> data_;
};

Matrix matmul(const Matrix& a, const Matrix& b);
// out[out_r0 .. out_r0+nr) += a[r0 .. r0+nr, c0 .. c0+nc) * x[x_r0 .. x_r0+nc); all columns of x.
void mul_add_block(const Matrix& a, std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc,
                   const Matrix& x, std::size_t x_r0, Matrix& out, std::size_t out_r0);
std::size_t rank(const Matrix& a);
// Rank computed per connected component of the nonzero pattern; equal to
// rank() but much cheaper on block-sparse matrices.
std::size_t rank_sparse(const Matrix& a);
bool nonsingular(const Matrix& a);
Matrix inverse(const Matrix& a);
Matrix solve(const Matrix& a, const Matrix& rhs);

Matrix blkdiag(const std::vector<Matrix>& blocks);
Matrix blkdiag_repeat(const Matrix& q, std::size_t times);
Matrix hstack(const std::vector<Matrix>& blocks);
Matrix vstack(const std::vector<Matrix>& blocks);

// Row-echelon helper: pivot column of every row of the reduced form, used to
// express a row space in terms of a full-row-rank basis.
std::vector<std::size_t> pivot_columns(const Matrix& a);

}  // namespace tmds
