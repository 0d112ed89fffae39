#pragma once

#include <map>
#include <vector>

#include "posetbocs/field.hpp"

namespace posetbocs {

/// Sparse coordinate vector: sorted (index, nonzero coefficient) pairs.
using SparseVec = std::vector<std::pair<int, Scalar>>;

SparseVec sparse_add(const SparseVec& a, const SparseVec& b, const Scalar& factor);
void sparse_normalize(SparseVec& v);

/// Incremental row-echelon structure for large sparse relation spans
/// (tensor-product balancing relations are a few nonzeros per row).
class SparseEchelon {
 public:
  /// Reduce and insert; returns true if the row enlarged the span.
  bool add_row(SparseVec row);
  /// Fully reduce a vector against the current span.
  SparseVec reduce(SparseVec row) const;
  bool in_span(const SparseVec& row) const { return reduce(row).empty(); }
  int rank() const { return static_cast<int>(rows_.size()); }
  const std::map<int, SparseVec>& rows() const { return rows_; }

 private:
  std::map<int, SparseVec> rows_;  // pivot index -> normalized row (pivot coeff 1)
};

}  // namespace posetbocs
