#include "posetbocs/subspace.hpp"

namespace posetbocs {

Subspace Subspace::span_rows(const Mat& rows) {
  RrefResult e = rref(rows);
  Subspace s(rows.field(), rows.cols());
  Mat b(rows.field(), e.rank, rows.cols());
  for (int i = 0; i < e.rank; ++i)
    for (int j = 0; j < rows.cols(); ++j) b.at(i, j) = e.m.at(i, j);
  s.basis_ = std::move(b);
  return s;
}

bool Subspace::contains(const Mat& row_vec) const { return coordinates(row_vec).has_value(); }

std::optional<Mat> Subspace::coordinates(const Mat& row_vec) const {
  if (row_vec.cols() != ambient() || row_vec.rows() != 1)
    throw std::invalid_argument("subspace: ambient dimension mismatch");
  // reduce against the echelon basis
  Mat v = row_vec;
  Mat coords(field(), 1, dim());
  for (int i = 0; i < dim(); ++i) {
    int p = -1;
    for (int j = 0; j < ambient(); ++j)
      if (basis_.at(i, j).is_one()) {  // first pivot 1 in RREF row
        p = j;
        break;
      }
    Scalar c = v.at(0, p);
    if (!c.is_zero()) {
      coords.at(0, i) = c;
      for (int j = 0; j < ambient(); ++j) v.at(0, j) -= c * basis_.at(i, j);
    }
  }
  if (!v.is_zero()) return std::nullopt;
  return coords;
}

bool Subspace::contains(const Subspace& other) const {
  for (int i = 0; i < other.dim(); ++i)
    if (!contains(other.basis_.row(i))) return false;
  return true;
}

Subspace Subspace::operator+(const Subspace& other) const {
  if (ambient() != other.ambient()) throw std::invalid_argument("subspace sum: ambient mismatch");
  return span_rows(vstack(basis_, other.basis_));
}

Subspace Subspace::intersect(const Subspace& other) const {
  if (ambient() != other.ambient())
    throw std::invalid_argument("subspace intersect: ambient mismatch");
  // Zassenhaus: rref of [U U; V 0]; rows with zero left half carry the
  // intersection in their right half.
  int n = ambient();
  Mat big(field(), dim() + other.dim(), 2 * n);
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < n; ++j) {
      big.at(i, j) = basis_.at(i, j);
      big.at(i, n + j) = basis_.at(i, j);
    }
  for (int i = 0; i < other.dim(); ++i)
    for (int j = 0; j < n; ++j) big.at(dim() + i, j) = other.basis_.at(i, j);
  RrefResult e = rref(big);
  Mat rows(field(), 0, n);
  for (int i = 0; i < e.rank; ++i) {
    bool left_zero = true;
    for (int j = 0; j < n && left_zero; ++j) left_zero = e.m.at(i, j).is_zero();
    if (left_zero) {
      Mat r(field(), 1, n);
      for (int j = 0; j < n; ++j) r.at(0, j) = e.m.at(i, n + j);
      rows = vstack(rows, r);
    }
  }
  return span_rows(rows);
}

}  // namespace posetbocs
