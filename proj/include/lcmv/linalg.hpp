#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "lcmv/field.hpp"

namespace lcmv {

/// Dense row-major matrix of exact scalars.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static Matrix from_rows(const std::vector<std::vector<mpq_class>>& rows, std::size_t cols);
  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  mpq_class& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const mpq_class& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<mpq_class> row(std::size_t r) const;
  bool is_zero() const;

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<mpq_class> data_;
};

/// Reduced row-echelon form with zero rows dropped. Pivot columns are
/// written to `pivots` when given.
Matrix rref(const Matrix& m, const Field& field, std::vector<std::size_t>* pivots = nullptr);
std::size_t rank(const Matrix& m, const Field& field);
Matrix multiply(const Matrix& a, const Matrix& b, const Field& field);
/// Basis of {v : m v = 0}, one basis vector per row of the result.
Matrix nullspace(const Matrix& m, const Field& field);
/// Stacks the rows of `b` under the rows of `a`.
Matrix vstack(const Matrix& a, const Matrix& b);

std::string to_string(const mpq_class& x);

}  // namespace lcmv
