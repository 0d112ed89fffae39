#pragma once

#include "posetbocs/matrix.hpp"
#include "posetbocs/sparse_echelon.hpp"

namespace posetbocs {

/// M (x)_A N as a quotient of M (x)_K N by the balancing relations
/// m*a (x) n - m (x) a*n, with an explicit projection on basis pairs.
/// Index convention: pair (m, n) -> m*dimN + n.
struct TensorQuotient {
  Field field = Field::rationals();
  int dimM = 0, dimN = 0, dim = 0;
  std::vector<int> reps;              // quotient coordinate -> representative big index
  std::vector<SparseVec> basis_proj;  // big index -> quotient coordinates

  int big(int m, int n) const { return m * dimN + n; }
  /// Project a sparse big-space vector to dense quotient coordinates (dim x 1).
  Mat project(const SparseVec& v) const;
  Mat project_pair(int m, int n) const;
};

/// right_action/left_action: one dimM x dimM (resp dimN x dimN) matrix per
/// algebra basis element, acting on coordinate columns.
TensorQuotient tensor_over_algebra(const Field& f, int dimM, const std::vector<Mat>& right_action,
                                   int dimN, const std::vector<Mat>& left_action);

}  // namespace posetbocs
