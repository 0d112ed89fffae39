#include "posetbocs/tensor.hpp"

#include <algorithm>

namespace posetbocs {

Mat TensorQuotient::project(const SparseVec& v) const {
  Mat out(field, dim, 1);
  for (const auto& [b, c] : v)
    for (const auto& [q, qc] : basis_proj[b]) out.at(q, 0) += c * qc;
  return out;
}

Mat TensorQuotient::project_pair(int m, int n) const {
  Mat out(field, dim, 1);
  for (const auto& [q, qc] : basis_proj[big(m, n)]) out.at(q, 0) = qc;
  return out;
}

TensorQuotient tensor_over_algebra(const Field& f, int dimM, const std::vector<Mat>& right_action,
                                   int dimN, const std::vector<Mat>& left_action) {
  if (right_action.size() != left_action.size())
    throw std::invalid_argument("tensor: algebra dimension mismatch");
  TensorQuotient tq;
  tq.field = f;
  tq.dimM = dimM;
  tq.dimN = dimN;
  SparseEchelon rels;
  for (size_t a = 0; a < right_action.size(); ++a) {
    const Mat& ra = right_action[a];
    const Mat& la = left_action[a];
    for (int m = 0; m < dimM; ++m)
      for (int n = 0; n < dimN; ++n) {
        SparseVec row;
        for (int k = 0; k < dimM; ++k)
          if (!ra.at(k, m).is_zero()) row.emplace_back(tq.big(k, n), ra.at(k, m));
        for (int k = 0; k < dimN; ++k)
          if (!la.at(k, n).is_zero()) row.emplace_back(tq.big(m, k), -la.at(k, n));
        sparse_normalize(row);
        if (!row.empty()) rels.add_row(std::move(row));
      }
  }
  int total = dimM * dimN;
  std::vector<int> quotient_pos(total, -1);
  for (int b = 0; b < total; ++b)
    if (!rels.rows().count(b)) {
      quotient_pos[b] = tq.dim++;
      tq.reps.push_back(b);
    }
  tq.basis_proj.assign(total, {});
  for (int b = 0; b < total; ++b) {
    if (quotient_pos[b] >= 0) {
      tq.basis_proj[b] = {{quotient_pos[b], f.one()}};
      continue;
    }
    // pivot: e_b = -(tail of its echelon row) in the quotient
    const SparseVec& row = rels.rows().at(b);
    SparseVec img;
    for (size_t t = 1; t < row.size(); ++t) img.emplace_back(quotient_pos[row[t].first], -row[t].second);
    sparse_normalize(img);
    tq.basis_proj[b] = std::move(img);
  }
  return tq;
}

}  // namespace posetbocs
