#include "posetbocs/incidence.hpp"

#include <algorithm>
#include <map>

namespace posetbocs {

MatrixAlgebra incidence_algebra(const Field& f, const Poset& p) {
  int n = p.size();
  std::vector<Mat> basis;
  for (int i = 1; i <= n; ++i) basis.push_back(Mat::unit(f, n, n, i - 1, i - 1));
  for (auto [i, j] : p.strict_pairs()) basis.push_back(Mat::unit(f, n, n, j - 1, i - 1));
  return MatrixAlgebra(f, n, std::move(basis), Mat::identity(f, n), "KP");
}

std::vector<Mat> incidence_radical_basis(const Field& f, const Poset& p) {
  int n = p.size();
  std::vector<Mat> out;
  for (auto [i, j] : p.strict_pairs()) out.push_back(Mat::unit(f, n, n, j - 1, i - 1));
  return out;
}

RowBalanced row_balanced(const Field& f, const Poset& p, const MinimalMarking& m) {
  int n = p.size();
  RowBalanced rb{MatrixAlgebra(f, 1, {Mat::identity(f, 1)}, Mat::identity(f, 1), "tmp"),
                 {}, Mat(f, n, n), {}, {}, {}, {}, m, n};
  rb.derived = p.derived();

  Mat eps0 = Mat::identity(f, n);
  for (int j : rb.derived) {
    Mat e = Mat::unit(f, n, n, j - 1, j - 1) - Mat::unit(f, n, n, j - 1, m(j) - 1);
    rb.eps.push_back(e);
    eps0 = eps0 - e;
  }
  rb.eps0 = eps0;

  std::vector<Mat> basis;
  basis.push_back(eps0);
  for (const auto& e : rb.eps) basis.push_back(e);
  for (auto [i, j] : p.strict_pairs()) {
    if (i == m(j)) continue;  // B_{j,m(j)} = 0, represented by omission
    Mat b = Mat::unit(f, n, n, j - 1, i - 1) - Mat::unit(f, n, n, j - 1, m(j) - 1);
    rb.rad_pairs.emplace_back(i, j);
    rb.rad_basis.push_back(b);
    basis.push_back(b);
  }
  rb.algebra = MatrixAlgebra(f, n, std::move(basis), Mat::identity(f, n), "K1P");

  for (auto [i, j] : p.strict_pairs())
    rb.bimodule_basis.push_back(Mat::unit(f, n, n, j - 1, j - 1) - Mat::unit(f, n, n, j - 1, i - 1));

  // every K^1 basis matrix balances rows; every bimodule basis matrix kills ones
  Mat ones(f, n, 1);
  for (int i = 0; i < n; ++i) ones.at(i, 0) = f.one();
  for (const auto& b : rb.algebra.basis()) {
    Mat v = b * ones;
    Scalar c = v.at(0, 0);
    for (int i = 0; i < n; ++i)
      if (v.at(i, 0) != c) throw ConsistencyError("K1P basis element is not row-balanced");
  }
  for (const auto& b : rb.bimodule_basis)
    if (!(b * ones).is_zero()) throw ConsistencyError("K1_0 basis element has nonzero row sum");
  return rb;
}

Mat RowBalanced::b(int j, int i) const {
  const Field& f = algebra.field();
  if (i >= j || i < 1) throw std::invalid_argument("bad B indices");
  return Mat::unit(f, n, n, j - 1, i - 1) - Mat::unit(f, n, n, j - 1, marking(j) - 1);
}

Subspace rad_square_row_balanced(const Field& f, const Poset& p, const MinimalMarking& m,
                                 const OrbitData& orbit) {
  int n = p.size();
  RowBalanced rb = row_balanced(f, p, m);

  // (ii) brute force: all pairwise products of radical basis elements
  Mat rows(f, 0, n * n);
  for (const auto& a : rb.rad_basis)
    for (const auto& b : rb.rad_basis) {
      Mat prod = a * b;
      if (!prod.is_zero()) rows = vstack(rows, prod.vectorize());
    }
  Subspace brute = Subspace::span_rows(rows);

  // (i) closed form: per top vertex j, extend the classes on min(P, j) to all
  // of { i : i < j }: a non-minimal non-cover i joins the class of its own
  // minimal support; covers stay isolated.  Within the class of m(j) the
  // elements B_ji themselves lie in rad^2; within any other class only the
  // differences against the class representative do.
  auto b_of = [&](int j, int i) {
    return Mat::unit(f, n, n, j - 1, i - 1) - Mat::unit(f, n, n, j - 1, m(j) - 1);
  };
  Mat closed_rows(f, 0, n * n);
  for (int j : p.derived()) {
    std::vector<int> low = p.lower(j);
    // class id per element of low: start from the orbit classes on min(P, j)
    const auto& pv = orbit.at(j);
    std::map<int, int> cls;  // label -> class index; -1 = isolated cover
    for (size_t c = 0; c < pv.classes.size(); ++c)
      for (int x : pv.classes[c]) cls[x] = static_cast<int>(c);
    for (int i : low) {
      if (p.is_minimal(i)) continue;
      if (p.covers(i, j)) {
        cls[i] = -1;
        continue;
      }
      cls[i] = cls[p.min_below(i).front()];
    }
    // the class containing m(j), and a representative per other class
    int m_class = cls[m(j)];
    std::map<int, int> rep;  // class index -> least minimal representative
    for (size_t c = 0; c < pv.classes.size(); ++c) rep[static_cast<int>(c)] = pv.classes[c].front();
    for (int i : low) {
      if (cls[i] == -1) continue;
      if (cls[i] == m_class) {
        if (i != m(j)) closed_rows = vstack(closed_rows, b_of(j, i).vectorize());
      } else if (i != rep[cls[i]]) {
        closed_rows = vstack(closed_rows, (b_of(j, i) - b_of(j, rep[cls[i]])).vectorize());
      }
    }
  }
  Subspace closed = Subspace::span_rows(closed_rows);

  if (!(closed == brute))
    throw ConsistencyError("rad^2(K1P): closed form and brute force disagree");
  return brute;
}

}  // namespace posetbocs
