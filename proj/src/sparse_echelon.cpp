#include "posetbocs/sparse_echelon.hpp"

#include <algorithm>

namespace posetbocs {

void sparse_normalize(SparseVec& v) {
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseVec out;
  out.reserve(v.size());
  for (auto& [i, c] : v) {
    if (!out.empty() && out.back().first == i)
      out.back().second += c;
    else
      out.emplace_back(i, c);
  }
  out.erase(std::remove_if(out.begin(), out.end(),
                           [](const auto& p) { return p.second.is_zero(); }),
            out.end());
  v = std::move(out);
}

SparseVec sparse_add(const SparseVec& a, const SparseVec& b, const Scalar& factor) {
  SparseVec out;
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      Scalar c = b[j].second * factor;
      if (!c.is_zero()) out.emplace_back(b[j].first, c);
      ++j;
    } else {
      Scalar c = a[i].second + b[j].second * factor;
      if (!c.is_zero()) out.emplace_back(a[i].first, c);
      ++i, ++j;
    }
  }
  return out;
}

SparseVec SparseEchelon::reduce(SparseVec row) const {
  size_t k = 0;
  while (k < row.size()) {
    auto it = rows_.find(row[k].first);
    if (it == rows_.end()) {
      ++k;
      continue;
    }
    row = sparse_add(row, it->second, -row[k].second);
    // indices below row[k].first are unaffected; rescan from k
  }
  return row;
}

bool SparseEchelon::add_row(SparseVec row) {
  row = reduce(std::move(row));
  if (row.empty()) return false;
  Scalar inv = row.front().second.inv();
  for (auto& [i, c] : row) c = c * inv;
  int pivot = row.front().first;
  // back-substitute into existing rows that touch the new pivot
  for (auto& [p, r] : rows_) {
    (void)p;
    for (size_t t = 0; t < r.size(); ++t)
      if (r[t].first == pivot) {
        r = sparse_add(r, row, -r[t].second);
        break;
      }
  }
  rows_.emplace(pivot, std::move(row));
  return true;
}

}  // namespace posetbocs
