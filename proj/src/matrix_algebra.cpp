#include "posetbocs/matrix_algebra.hpp"

#include <algorithm>

namespace posetbocs {

MatrixAlgebra::MatrixAlgebra(const Field& f, int ambient, std::vector<Mat> basis, Mat unit,
                             std::string label)
    : field_(f),
      ambient_(ambient),
      basis_(std::move(basis)),
      unit_(std::move(unit)),
      unit_coords_(f, 0, 0),
      label_(std::move(label)),
      span_(f, ambient * ambient),
      coord_solver_(f, 0, 0) {
  if (basis_.empty()) throw std::invalid_argument("algebra needs a nonempty basis");
  Mat rows(f, 0, ambient_ * ambient_);
  for (const auto& b : basis_) {
    if (b.rows() != ambient_ || b.cols() != ambient_)
      throw std::invalid_argument("algebra basis element of wrong ambient size");
    rows = vstack(rows, b.vectorize());
  }
  span_ = Subspace::span_rows(rows);
  if (span_.dim() != dim())
    throw ConsistencyError(label_ + ": basis is linearly dependent");
  {
    RrefResult e = rref(rows);
    coord_pivots_ = e.pivots;
    Mat piv(f, dim(), dim());
    for (int i = 0; i < dim(); ++i)
      for (int t = 0; t < dim(); ++t) piv.at(i, t) = rows.at(i, coord_pivots_[t]);
    auto inv = solve(piv.transpose(), Mat::identity(f, dim()));
    if (!inv) throw ConsistencyError(label_ + ": pivot inversion failed");
    coord_solver_ = *inv;
  }
  auto uc = coordinates(unit_);
  if (!uc) throw ConsistencyError(label_ + ": unit not in span");
  unit_coords_ = *uc;
  mult_.assign(dim(), {});
  for (int i = 0; i < dim(); ++i) {
    mult_[i].reserve(dim());
    for (int j = 0; j < dim(); ++j) {
      auto c = coordinates(basis_[i] * basis_[j]);
      if (!c) throw ConsistencyError(label_ + ": not closed under products");
      mult_[i].push_back(std::move(*c));
    }
  }
  for (int i = 0; i < dim(); ++i)
    if (unit_ * basis_[i] != basis_[i] || basis_[i] * unit_ != basis_[i])
      throw ConsistencyError(label_ + ": unit does not act as identity");
}

std::optional<Mat> MatrixAlgebra::coordinates(const Mat& m) const {
  // Solve on the pivot columns of the span, then verify exactly.
  Mat v = m.vectorize();
  Mat rhs(field_, static_cast<int>(coord_pivots_.size()), 1);
  for (size_t t = 0; t < coord_pivots_.size(); ++t) rhs.at(static_cast<int>(t), 0) = v.at(0, coord_pivots_[t]);
  Mat coords = coord_solver_ * rhs;
  if (element(coords) != m) return std::nullopt;
  return coords;
}

Mat MatrixAlgebra::element(const Mat& coords) const {
  if (coords.rows() != dim() || coords.cols() != 1)
    throw std::invalid_argument("element: coordinate size mismatch");
  Mat out(field_, ambient_, ambient_);
  for (int i = 0; i < dim(); ++i)
    if (!coords.at(i, 0).is_zero()) out = out + basis_[i] * coords.at(i, 0);
  return out;
}

Mat MatrixAlgebra::left_mult(const Mat& coords) const {
  Mat op(field_, dim(), dim());
  for (int i = 0; i < dim(); ++i) {
    if (coords.at(i, 0).is_zero()) continue;
    for (int j = 0; j < dim(); ++j)
      for (int k = 0; k < dim(); ++k) op.at(k, j) += coords.at(i, 0) * mult_[i][j].at(k, 0);
  }
  return op;
}

Mat MatrixAlgebra::right_mult(const Mat& coords) const {
  Mat op(field_, dim(), dim());
  for (int j = 0; j < dim(); ++j) {
    if (coords.at(j, 0).is_zero()) continue;
    for (int i = 0; i < dim(); ++i)
      for (int k = 0; k < dim(); ++k) op.at(k, i) += coords.at(j, 0) * mult_[i][j].at(k, 0);
  }
  return op;
}

namespace {

Scalar ambient_trace(const Mat& m) {
  Scalar t = m.field().zero();
  for (int i = 0; i < m.rows(); ++i) t += m.at(i, i);
  return t;
}

// Division-free characteristic polynomial (Berkowitz); returns the
// coefficients c_0 = 1, c_1, ..., c_N of det(tI - M) = sum c_j t^{N-j}.
std::vector<Scalar> char_poly(const Mat& m) {
  const Field& f = m.field();
  int N = m.rows();
  std::vector<Scalar> q{f.one()};
  for (int r = 1; r <= N; ++r) {
    // Toeplitz column: 1, -a, -(R C), -(R B C), -(R B^2 C), ...
    std::vector<Scalar> s(static_cast<size_t>(r) + 1, f.zero());
    s[0] = f.one();
    s[1] = -m.at(r - 1, r - 1);
    if (r >= 2) {
      Mat w(f, r - 1, 1);
      for (int i = 0; i < r - 1; ++i) w.at(i, 0) = m.at(i, r - 1);
      for (int k = 2; k <= r; ++k) {
        Scalar dot = f.zero();
        for (int i = 0; i < r - 1; ++i) dot += m.at(r - 1, i) * w.at(i, 0);
        s[static_cast<size_t>(k)] = -dot;
        if (k < r) {
          Mat nw(f, r - 1, 1);
          for (int i = 0; i < r - 1; ++i) {
            for (int j = 0; j < r - 1; ++j) nw.at(i, 0) += m.at(i, j) * w.at(j, 0);
          }
          w = std::move(nw);
        }
      }
    }
    std::vector<Scalar> nq(static_cast<size_t>(r) + 1, f.zero());
    for (size_t i = 0; i <= static_cast<size_t>(r); ++i)
      for (size_t k = 0; k <= i && k < s.size(); ++k)
        if (i - k < q.size()) nq[i] += s[k] * q[i - k];
    q = std::move(nq);
  }
  return q;
}

}  // namespace

Subspace MatrixAlgebra::radical() const {
  const Field& f = field_;
  // Current candidate space, as rows of coefficient vectors over the basis.
  std::vector<Mat> cur;  // coordinate rows (1 x dim)
  for (int i = 0; i < dim(); ++i) cur.push_back(Mat::unit(f, 1, dim(), 0, i));

  auto element_of = [&](const Mat& row) {
    Mat m(f, ambient_, ambient_);
    for (int i = 0; i < dim(); ++i)
      if (!row.at(0, i).is_zero()) m = m + basis_[i] * row.at(0, i);
    return m;
  };

  if (f.is_rationals()) {
    // kernel of (x, y) -> tr(xy) on the algebra (Dickson criterion)
    Mat gram(f, dim(), dim());
    for (int i = 0; i < dim(); ++i)
      for (int j = 0; j < dim(); ++j) gram.at(i, j) = ambient_trace(basis_[i] * basis_[j]);
    Mat k = kernel(gram);
    return Subspace::span_rows(k.transpose());
  }

  // Characteristic p: Friedl-Ronyai chain. At level k the characteristic
  // polynomial coefficient at index p^k gives a linear condition on the
  // space cut out by the previous levels; the chain reaches the radical
  // once p^k exceeds the ambient dimension.
  unsigned long p = f.characteristic();
  unsigned long q = 1;
  while (true) {
    std::vector<Mat> elems;
    elems.reserve(cur.size());
    for (const auto& row : cur) elems.push_back(element_of(row));
    Mat cond(f, static_cast<int>(cur.size()), static_cast<int>(cur.size()));
    for (size_t a = 0; a < cur.size(); ++a)
      for (size_t b = 0; b < cur.size(); ++b) {
        if (q == 1) {
          cond.at(static_cast<int>(a), static_cast<int>(b)) = ambient_trace(elems[a] * elems[b]);
        } else {
          std::vector<Scalar> cp = char_poly(elems[a] * elems[b]);
          cond.at(static_cast<int>(a), static_cast<int>(b)) = cp[q];
        }
      }
    Mat k = kernel(cond.transpose());  // conditions indexed by y; combos of x
    std::vector<Mat> next;
    for (int c = 0; c < k.cols(); ++c) {
      Mat row(f, 1, dim());
      for (size_t a = 0; a < cur.size(); ++a)
        if (!k.at(static_cast<int>(a), c).is_zero())
          row = row + cur[a] * k.at(static_cast<int>(a), c);
      next.push_back(row);
    }
    cur = std::move(next);
    if (cur.empty()) break;
    q *= p;
    if (q > static_cast<unsigned long>(ambient_)) break;
  }
  Mat rows(f, 0, dim());
  for (const auto& r : cur) rows = vstack(rows, r);
  return Subspace::span_rows(rows);
}

MatrixAlgebra MatrixAlgebra::corner(const Mat& idem, const std::string& label) const {
  if (!(idem * idem == idem)) throw std::invalid_argument("corner: not an idempotent");
  Mat rows(field_, 0, ambient_ * ambient_);
  std::vector<Mat> picked;
  Subspace acc(field_, ambient_ * ambient_);
  for (const auto& b : basis_) {
    Mat ebe = idem * b * idem;
    if (ebe.is_zero()) continue;
    Subspace widened = acc + Subspace::span_rows(ebe.vectorize());
    if (widened.dim() > acc.dim()) {
      picked.push_back(ebe);
      acc = widened;
    }
  }
  return MatrixAlgebra(field_, ambient_, picked, idem, label);
}

MatrixAlgebra MatrixAlgebra::opposite() const {
  std::vector<Mat> tb;
  tb.reserve(basis_.size());
  for (const auto& b : basis_) tb.push_back(b.transpose());
  return MatrixAlgebra(field_, ambient_, tb, unit_.transpose(), label_ + "^op");
}

void verify_bimodule_closure(const BimoduleSubspace& bm) {
  Mat rows(bm.basis.front().field(), 0, bm.ambient * bm.ambient);
  for (const auto& b : bm.basis) rows = vstack(rows, b.vectorize());
  Subspace span = Subspace::span_rows(rows);
  if (span.dim() != static_cast<int>(bm.basis.size()))
    throw ConsistencyError("bimodule basis dependent");
  if (bm.left_algebra)
    for (const auto& a : bm.left_algebra->basis())
      for (const auto& b : bm.basis)
        if (!span.contains((a * b).vectorize()))
          throw ConsistencyError("bimodule not closed under left action");
  if (bm.right_algebra)
    for (const auto& b : bm.basis)
      for (const auto& a : bm.right_algebra->basis())
        if (!span.contains((b * a).vectorize()))
          throw ConsistencyError("bimodule not closed under right action");
}

int VertexFrame::index_of(int label) const {
  for (size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return static_cast<int>(i);
  throw std::invalid_argument("no frame vertex labeled " + std::to_string(label));
}

}  // namespace posetbocs
