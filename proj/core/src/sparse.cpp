#include "dphg/sparse.hpp"

#include "dphg/error.hpp"

namespace dphg {

namespace {

void canonicalize(SparseMatrix::Storage& m) {
  m.prune([](Index, Index, double v) { return v != 0.0; });
  m.makeCompressed();
}

}  // namespace

SparseMatrix::SparseMatrix(Index rows, Index cols) : m_(rows, cols) { m_.makeCompressed(); }

SparseMatrix::SparseMatrix(Storage storage) : m_(std::move(storage)) { canonicalize(m_); }

SparseMatrix SparseMatrix::from_entries(Index rows, Index cols, std::span<const Entry> entries) {
  std::vector<Eigen::Triplet<double, Index>> triplets;
  triplets.reserve(entries.size());
  for (const Entry& e : entries) {
    if (e.row < 0 || e.row >= rows || e.col < 0 || e.col >= cols) {
      throw Error(ErrorCode::ShapeMismatch, "sparse entry outside matrix bounds");
    }
    triplets.emplace_back(e.row, e.col, e.value);
  }
  Storage m(rows, cols);
  m.setFromTriplets(triplets.begin(), triplets.end());
  return SparseMatrix(std::move(m));
}

SparseMatrix SparseMatrix::identity(Index n) {
  Storage m(n, n);
  m.setIdentity();
  return SparseMatrix(std::move(m));
}

SparseMatrix SparseMatrix::diagonal(const Vector& diag) {
  std::vector<Entry> entries;
  entries.reserve(static_cast<std::size_t>(diag.size()));
  for (Index i = 0; i < diag.size(); ++i) entries.push_back({i, i, diag[i]});
  return from_entries(diag.size(), diag.size(), entries);
}

SparseMatrix SparseMatrix::from_dense(const Matrix& dense) {
  return SparseMatrix(Storage(dense.sparseView(0.0, 0.0)));
}

std::vector<SparseMatrix::Entry> SparseMatrix::entries() const {
  std::vector<Entry> out;
  out.reserve(static_cast<std::size_t>(nnz()));
  for (Index r = 0; r < rows(); ++r) {
    for_each_in_row(r, [&](Index c, double v) { out.push_back({r, c, v}); });
  }
  return out;
}

SparseMatrix SparseMatrix::transpose() const { return SparseMatrix(Storage(m_.transpose())); }

Vector SparseMatrix::row_sums() const {
  Vector sums = Vector::Zero(rows());
  for (Index r = 0; r < rows(); ++r) {
    double s = 0.0;
    for_each_in_row(r, [&](Index, double v) { s += v; });
    sums[r] = s;
  }
  return sums;
}

SparseMatrix SparseMatrix::scale_rows(const Vector& scale) const {
  if (scale.size() != rows()) throw Error(ErrorCode::ShapeMismatch, "row scale length");
  return SparseMatrix(Storage(scale.asDiagonal() * m_));
}

SparseMatrix SparseMatrix::scale_cols(const Vector& scale) const {
  if (scale.size() != cols()) throw Error(ErrorCode::ShapeMismatch, "column scale length");
  return SparseMatrix(Storage(m_ * scale.asDiagonal()));
}

SparseMatrix SparseMatrix::select_rows(std::span<const Index> rows_to_keep) const {
  std::vector<Entry> out;
  for (std::size_t i = 0; i < rows_to_keep.size(); ++i) {
    const Index r = rows_to_keep[i];
    if (r < 0 || r >= rows()) throw Error(ErrorCode::ShapeMismatch, "row selector out of range");
    for_each_in_row(r, [&](Index c, double v) { out.push_back({static_cast<Index>(i), c, v}); });
  }
  return from_entries(static_cast<Index>(rows_to_keep.size()), cols(), out);
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& other) const {
  if (cols() != other.rows()) throw Error(ErrorCode::ShapeMismatch, "sparse product");
  return SparseMatrix(Storage(m_ * other.m_));
}

SparseMatrix SparseMatrix::operator+(const SparseMatrix& other) const {
  if (rows() != other.rows() || cols() != other.cols()) {
    throw Error(ErrorCode::ShapeMismatch, "sparse sum");
  }
  return SparseMatrix(Storage(m_ + other.m_));
}

SparseMatrix SparseMatrix::operator-(const SparseMatrix& other) const {
  if (rows() != other.rows() || cols() != other.cols()) {
    throw Error(ErrorCode::ShapeMismatch, "sparse difference");
  }
  return SparseMatrix(Storage(m_ - other.m_));
}

SparseMatrix SparseMatrix::operator*(double s) const { return SparseMatrix(Storage(m_ * s)); }

bool SparseMatrix::operator==(const SparseMatrix& other) const {
  if (rows() != other.rows() || cols() != other.cols() || nnz() != other.nnz()) return false;
  for (Index r = 0; r < rows(); ++r) {
    Storage::InnerIterator a(m_, r);
    Storage::InnerIterator b(other.m_, r);
    for (; a && b; ++a, ++b) {
      if (a.col() != b.col() || a.value() != b.value()) return false;
    }
    if (a || b) return false;
  }
  return true;
}

}  // namespace dphg
