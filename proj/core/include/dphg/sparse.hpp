#pragma once

#include <span>
#include <vector>

#include <Eigen/SparseCore>

#include "dphg/types.hpp"

namespace dphg {

// Row-compressed real matrix. Column indices are strictly increasing within a
// row and explicit zeros are never stored: every constructor sums duplicate
// coordinates and prunes exact zeros.
class SparseMatrix {
 public:
  using Storage = Eigen::SparseMatrix<double, Eigen::RowMajor, Index>;

  struct Entry {
    Index row;
    Index col;
    double value;
  };

  SparseMatrix() = default;
  SparseMatrix(Index rows, Index cols);

  static SparseMatrix from_entries(Index rows, Index cols, std::span<const Entry> entries);
  static SparseMatrix identity(Index n);
  static SparseMatrix diagonal(const Vector& diag);
  static SparseMatrix from_dense(const Matrix& dense);

  Index rows() const { return m_.rows(); }
  Index cols() const { return m_.cols(); }
  Index nnz() const { return m_.nonZeros(); }

  double coeff(Index row, Index col) const { return m_.coeff(row, col); }
  Matrix to_dense() const { return Matrix(m_); }
  std::vector<Entry> entries() const;

  SparseMatrix transpose() const;
  Vector row_sums() const;

  // diag(scale) * this
  SparseMatrix scale_rows(const Vector& scale) const;
  // this * diag(scale)
  SparseMatrix scale_cols(const Vector& scale) const;
  SparseMatrix select_rows(std::span<const Index> rows) const;

  Matrix operator*(const Matrix& dense) const { return m_ * dense; }
  SparseMatrix operator*(const SparseMatrix& other) const;
  SparseMatrix operator+(const SparseMatrix& other) const;
  SparseMatrix operator-(const SparseMatrix& other) const;
  SparseMatrix operator*(double s) const;

  bool operator==(const SparseMatrix& other) const;

  // Visits the stored entries of one row in increasing column order.
  template <class F>
  void for_each_in_row(Index row, F&& f) const {
    for (Storage::InnerIterator it(m_, row); it; ++it) f(it.col(), it.value());
  }

  const Storage& storage() const { return m_; }

 private:
  explicit SparseMatrix(Storage storage);

  Storage m_;
};

}  // namespace dphg
