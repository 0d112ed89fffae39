#pragma once

#include "posetbocs/matrix.hpp"

namespace posetbocs {

/// Subspace of K^ambient held as a canonical reduced row-echelon basis,
/// so equality of subspaces is equality of basis matrices.
class Subspace {
 public:
  Subspace(const Field& f, int ambient) : basis_(f, 0, ambient) {}
  static Subspace span_rows(const Mat& rows);

  int ambient() const { return basis_.cols(); }
  int dim() const { return basis_.rows(); }
  const Mat& basis() const { return basis_; }
  const Field& field() const { return basis_.field(); }

  bool contains(const Mat& row_vec) const;
  bool contains(const Subspace& other) const;
  /// Coefficients of row_vec in the echelon basis (1 x dim), if it lies in the space.
  std::optional<Mat> coordinates(const Mat& row_vec) const;

  Subspace operator+(const Subspace& other) const;
  Subspace intersect(const Subspace& other) const;
  bool operator==(const Subspace& other) const { return basis_ == other.basis_; }
  bool operator!=(const Subspace& other) const { return !(*this == other); }

 private:
  Mat basis_;  // dim x ambient, RREF with no zero rows
};

}  // namespace posetbocs
