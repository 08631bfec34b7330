#include "lcmv/linalg.hpp"

#include <utility>

#include "lcmv/error.hpp"

namespace lcmv {

Matrix Matrix::from_rows(const std::vector<std::vector<mpq_class>>& rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) {
      throw Error(ErrorCode::kInvalidArgument, "row " + std::to_string(r) + " has " +
                                                   std::to_string(rows[r].size()) + " entries, expected " +
                                                   std::to_string(cols));
    }
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

std::vector<mpq_class> Matrix::row(std::size_t r) const {
  return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
          data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
}

bool Matrix::is_zero() const {
  for (const auto& x : data_) {
    if (x != 0) return false;
  }
  return true;
}

Matrix rref(const Matrix& input, const Field& field, std::vector<std::size_t>* pivots) {
  Matrix m = input;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = field.reduce(m(r, c));
  }
  std::vector<std::size_t> pivot_cols;
  std::size_t lead_row = 0;
  for (std::size_t c = 0; c < m.cols() && lead_row < m.rows(); ++c) {
    std::size_t sel = lead_row;
    while (sel < m.rows() && m(sel, c) == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != lead_row) {
      for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(sel, k), m(lead_row, k));
    }
    mpq_class inv = field.inv(m(lead_row, c));
    for (std::size_t k = c; k < m.cols(); ++k) m(lead_row, k) = field.mul(m(lead_row, k), inv);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == lead_row || m(r, c) == 0) continue;
      mpq_class factor = m(r, c);
      for (std::size_t k = c; k < m.cols(); ++k) {
        m(r, k) = field.sub(m(r, k), field.mul(factor, m(lead_row, k)));
      }
    }
    pivot_cols.push_back(c);
    ++lead_row;
  }
  Matrix out(lead_row, m.cols());
  for (std::size_t r = 0; r < lead_row; ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c);
  }
  if (pivots) *pivots = std::move(pivot_cols);
  return out;
}

std::size_t rank(const Matrix& m, const Field& field) { return rref(m, field).rows(); }

Matrix multiply(const Matrix& a, const Matrix& b, const Field& field) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::kInvalidArgument, "matrix shapes do not compose");
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  }
  if (!field.is_rational()) {
    for (std::size_t i = 0; i < out.rows(); ++i) {
      for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) = field.reduce(out(i, j));
    }
  }
  return out;
}

Matrix nullspace(const Matrix& m, const Field& field) {
  std::vector<std::size_t> pivots;
  Matrix reduced = rref(m, field, &pivots);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  Matrix basis(m.cols() - pivots.size(), m.cols());
  std::size_t out_row = 0;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    basis(out_row, free) = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      basis(out_row, pivots[r]) = field.reduce(-reduced(r, free));
    }
    ++out_row;
  }
  return basis;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
  if (a.rows() > 0 && b.rows() > 0 && a.cols() != b.cols()) {
    throw Error(ErrorCode::kInvalidArgument, "vstack column mismatch");
  }
  std::size_t cols = a.rows() > 0 ? a.cols() : b.cols();
  Matrix out(a.rows() + b.rows(), cols);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < cols; ++c) out(r, c) = a(r, c);
  }
  for (std::size_t r = 0; r < b.rows(); ++r) {
    for (std::size_t c = 0; c < cols; ++c) out(a.rows() + r, c) = b(r, c);
  }
  return out;
}

std::string to_string(const mpq_class& x) { return x.get_str(); }

}  // namespace lcmv
