#include "posetbocs/burt_butler.hpp"

#include <algorithm>

namespace posetbocs {

namespace {

Mat e_col(const Field& f, int dim, int i) { return Mat::unit(f, dim, 1, i, 0); }

// A-submodule of K^dim spanned by the orbit of the given columns under the
// action matrices.
Subspace orbit_span(const Field& f, const std::vector<Mat>& action, const std::vector<Mat>& seeds) {
  Mat rows(f, 0, action.front().cols());
  for (const auto& s : seeds) rows = vstack(rows, s.transpose());
  Subspace span = Subspace::span_rows(rows);
  bool grew = true;
  while (grew) {
    grew = false;
    Mat next = span.basis();
    for (int r = 0; r < span.dim(); ++r)
      for (const auto& act : action) {
        Mat img = (act * span.basis().row(r).transpose()).transpose();
        if (!span.contains(img)) {
          next = vstack(next, img);
          grew = true;
        }
      }
    if (grew) span = Subspace::span_rows(next);
  }
  return span;
}

}  // namespace

Mat HomAlgebra::coordinates(const Mat& hom) const {
  Mat values = value_map * hom.vectorize().transpose();
  Mat rhs(values.field(), static_cast<int>(value_pivots.size()), 1);
  for (size_t t = 0; t < value_pivots.size(); ++t) rhs.at(static_cast<int>(t), 0) = values.at(value_pivots[t], 0);
  Mat coords = value_solver * rhs;
  Mat recon(hom.field(), hom.rows(), hom.cols());
  for (int l = 0; l < dim(); ++l)
    if (!coords.at(l, 0).is_zero()) recon = recon + basis[l] * coords.at(l, 0);
  if (recon != hom) throw ConsistencyError("hom element escapes the computed basis");
  return coords;
}

HomAlgebra hom_algebra(const Bocs& b, bool right_side) {
  const Field& f = b.field;
  const int dA = b.dimA(), dU = b.dimU(), n = b.n;
  HomAlgebra H;
  H.right_side = right_side;
  H.unit = b.counit;

  if (right_side) {
    // psi_z: A omega -> A by a omega -> a z, vanishing on V.
    // In the U basis: omega e_m = e_m omega, omega alpha_m = alpha_m omega - delta(alpha_m).
    for (int z = 0; z < dA; ++z) {
      Mat h(f, dA, dU);
      Mat zc = e_col(f, dA, z);
      for (int m = 0; m <= n; ++m) {
        Mat val = b.a_mul(e_col(f, dA, b.a_e(m)), zc);
        for (int r = 0; r < dA; ++r) h.at(r, b.u_we(m)) = val.at(r, 0);
      }
      for (int i = 1; i <= n; ++i) {
        Mat val = b.a_mul(e_col(f, dA, b.a_alpha(i)), zc);
        for (int r = 0; r < dA; ++r) h.at(r, b.u_wa(i)) = val.at(r, 0);
      }
      H.basis.push_back(std::move(h));
    }
    // rho_t: projection onto the summand of v_{ij} followed by a e_i -> a e_i.
    // Note omega alpha_j = alpha_j omega - delta(alpha_j) carries the
    // V-component alpha_i v_{ij}, so rho_t(omega alpha_j) = alpha_i.
    for (size_t t = 0; t < b.vpairs.size(); ++t) {
      auto [i, j] = b.vpairs[t];
      Mat h(f, dA, dU);
      h.at(b.a_e(i), b.u_v(static_cast<int>(t))) = f.one();
      h.at(b.a_alpha(i), b.u_av(static_cast<int>(t))) = f.one();
      h.at(b.a_alpha(i), b.u_wa(j)) = f.one();
      H.basis.push_back(std::move(h));
    }
  } else {
    // chi_z: omega A -> A by omega a -> z a, vanishing on V.
    for (int z = 0; z < dA; ++z) {
      Mat h(f, dA, dU);
      Mat zc = e_col(f, dA, z);
      for (int m = 0; m <= n; ++m) {
        Mat val = b.a_mul(zc, e_col(f, dA, b.a_e(m)));
        for (int r = 0; r < dA; ++r) h.at(r, b.u_we(m)) = val.at(r, 0);
      }
      for (int i = 1; i <= n; ++i) {
        Mat val = b.a_mul(zc, e_col(f, dA, b.a_alpha(i)));
        for (int r = 0; r < dA; ++r) h.at(r, b.u_wa(i)) = val.at(r, 0);
      }
      H.basis.push_back(std::move(h));
    }
    // one generator per (pair, source, value): v or alpha v -> e_j or alpha_j
    for (size_t t = 0; t < b.vpairs.size(); ++t) {
      auto [i, j] = b.vpairs[t];
      (void)i;
      for (int src : {b.u_v(static_cast<int>(t)), b.u_av(static_cast<int>(t))})
        for (int val : {b.a_e(j), b.a_alpha(j)}) {
          Mat h(f, dA, dU);
          h.at(val, src) = f.one();
          H.basis.push_back(std::move(h));
        }
    }
  }

  // certificate 1: every candidate is A-linear on the declared side
  for (const auto& h : H.basis)
    for (int a = 0; a < dA; ++a)
      for (int u = 0; u < dU; ++u) {
        Mat acol = e_col(f, dA, a), ucol = e_col(f, dU, u);
        if (right_side) {
          if (h * b.act_left(acol, ucol) != b.a_mul(acol, h * ucol))
            throw ConsistencyError("hom candidate not left A-linear");
        } else {
          if (h * b.act_right(ucol, acol) != b.a_mul(h * ucol, acol))
            throw ConsistencyError("hom candidate not right A-linear");
        }
      }

  // certificate 2: the module generators span U under the side's action, so
  // restriction to generator values is injective on the Hom space
  {
    std::vector<Mat> gens{b.omega};
    for (size_t t = 0; t < b.vpairs.size(); ++t) {
      gens.push_back(e_col(f, dU, b.u_v(static_cast<int>(t))));
      if (!right_side) gens.push_back(e_col(f, dU, b.u_av(static_cast<int>(t))));
    }
    const auto& action = right_side ? b.left_act : b.right_act;
    if (orbit_span(f, action, gens).dim() != dU)
      throw ConsistencyError("hom generators do not generate U");

    // certificate 3: forced value constraints bound the dimension:
    // on generator v (resp. alpha v) a linear map takes values in e_i A
    // (right side) or A e_j (left side); on omega the whole of A.
    int bound = dA;
    for (auto [i, j] : b.vpairs) {
      Mat rows(f, 0, (n + 1) * (n + 1));
      if (right_side) {
        // values on v_{ij} are forced into e_i A
        for (int t = 0; t < dA; ++t)
          rows = vstack(rows, (b.a_img.basis(b.a_e(i)) * b.a_img.basis(t)).vectorize());
        bound += Subspace::span_rows(rows).dim();
      } else {
        // values on v_{ij} and alpha_i v_{ij} are forced into A e_j
        for (int t = 0; t < dA; ++t)
          rows = vstack(rows, (b.a_img.basis(t) * b.a_img.basis(b.a_e(j))).vectorize());
        bound += 2 * Subspace::span_rows(rows).dim();
      }
    }
    if (bound != static_cast<int>(H.basis.size()))
      throw ConsistencyError("hom dimension bound does not match the candidate count");
  }

  // value map: stack the generator values of each basis element; invertible
  // square by construction once independence holds
  {
    std::vector<std::pair<int, int>> value_slots;  // (A row, U column)
    for (int r = 0; r < dA; ++r)
      for (int m = 0; m <= n; ++m) value_slots.emplace_back(r, b.u_we(m));
    for (int r = 0; r < dA; ++r)
      for (int i = 1; i <= n; ++i) value_slots.emplace_back(r, b.u_wa(i));
    for (size_t t = 0; t < b.vpairs.size(); ++t)
      for (int r = 0; r < dA; ++r) {
        value_slots.emplace_back(r, b.u_v(static_cast<int>(t)));
        value_slots.emplace_back(r, b.u_av(static_cast<int>(t)));
      }
    Mat vm(f, static_cast<int>(value_slots.size()), dA * dU);
    for (size_t s = 0; s < value_slots.size(); ++s)
      vm.at(static_cast<int>(s), value_slots[s].first * dU + value_slots[s].second) = f.one();
    Mat stacked(f, static_cast<int>(H.basis.size()), static_cast<int>(value_slots.size()));
    for (size_t l = 0; l < H.basis.size(); ++l) {
      Mat v = vm * H.basis[l].vectorize().transpose();
      for (int s = 0; s < v.rows(); ++s) stacked.at(static_cast<int>(l), s) = v.at(s, 0);
    }
    RrefResult e = rref(stacked);
    if (e.rank != static_cast<int>(H.basis.size()))
      throw ConsistencyError("hom candidates are linearly dependent");
    H.value_pivots = e.pivots;
    Mat piv(f, e.rank, e.rank);
    for (int l = 0; l < e.rank; ++l)
      for (int t = 0; t < e.rank; ++t) piv.at(l, t) = stacked.at(l, H.value_pivots[t]);
    auto inv = solve(piv.transpose(), Mat::identity(f, e.rank));
    if (!inv) throw ConsistencyError("hom value solver failed");
    H.value_map = vm;
    H.value_solver = *inv;
  }
  return H;
}

Mat hom_product(const Bocs& b, bool right_side, const Mat& fh, const Mat& gh) {
  const Field& f = b.field;
  const int dA = b.dimA(), dU = b.dimU();
  Mat out(f, dA, dU);
  for (int u = 0; u < dU; ++u) {
    Mat acc(f, dA, 1);
    for (const auto& [c, x, y] : b.mu_lift[u]) {
      if (right_side) {
        // g(x . f(y))
        Mat fy = fh * e_col(f, dU, y);
        Mat xfy(f, dU, 1);
        for (int t = 0; t < dA; ++t)
          if (!fy.at(t, 0).is_zero()) xfy = xfy + b.right_act[t] * e_col(f, dU, x) * fy.at(t, 0);
        acc = acc + (gh * xfy) * c;
      } else {
        // f(g(x) . y)
        Mat gx = gh * e_col(f, dU, x);
        Mat gxy(f, dU, 1);
        for (int t = 0; t < dA; ++t)
          if (!gx.at(t, 0).is_zero()) gxy = gxy + b.left_act[t] * e_col(f, dU, y) * gx.at(t, 0);
        acc = acc + (fh * gxy) * c;
      }
    }
    for (int r = 0; r < dA; ++r) out.at(r, u) = acc.at(r, 0);
  }
  return out;
}

Mat a_to_hom(const Bocs& b, bool right_side, int abstract_index) {
  const Field& f = b.field;
  Mat h(f, b.dimA(), b.dimU());
  Mat z = e_col(f, b.dimA(), abstract_index);
  for (int u = 0; u < b.dimU(); ++u) {
    Mat eps_u = b.counit * e_col(f, b.dimU(), u);
    Mat val = right_side ? b.a_mul(eps_u, z) : b.a_mul(z, eps_u);
    for (int r = 0; r < b.dimA(); ++r) h.at(r, u) = val.at(r, 0);
  }
  return h;
}

Mat RealizedAlgebra::realize(const Bocs& b, const Mat& hom) const {
  const Field& f = b.field;
  const int n = b.n;
  if (right_side) {
    Mat g(f, n + 1, n + 1);
    for (int j = 1; j <= n + 1; ++j) {
      Mat zu = b.act_right(b.omega, e_col(f, b.dimA(), j <= n ? b.a_alpha(j) : b.a_e(0)));
      Mat val = hom * zu;
      if (!val.at(b.a_e(0), 0).is_zero() && j <= n)
        throw ConsistencyError("right action leaves e_0 A");
      for (int i = 1; i <= n; ++i) g.at(j - 1, i - 1) = val.at(b.a_alpha(i), 0);
      g.at(j - 1, n) = val.at(b.a_e(0), 0);
      for (int i = 1; i <= n; ++i)
        if (!val.at(b.a_e(i), 0).is_zero()) throw ConsistencyError("right action leaves e_0 A");
    }
    return g;
  }
  Mat g(f, 2 * n, 2 * n);
  for (int t = 1; t <= 2 * n; ++t) {
    Mat z = e_col(f, b.dimA(), t <= n ? b.a_e(t) : b.a_alpha(t - n));
    Mat val = hom * b.act_left(z, b.omega_prime);
    if (!val.at(b.a_e(0), 0).is_zero()) throw ConsistencyError("left action leaves A e'");
    for (int s = 1; s <= n; ++s) {
      g.at(s - 1, t - 1) = val.at(b.a_e(s), 0);
      g.at(n + s - 1, t - 1) = val.at(b.a_alpha(s), 0);
    }
  }
  return g;
}

RealizedAlgebra right_realization(const Bocs& b) {
  const Field& f = b.field;
  const int n = b.n;
  RealizedAlgebra R;
  R.right_side = true;
  R.abstract = hom_algebra(b, true);

  // image: block algebra (KP, 0; K^{1xn}, K) in Mat_{n+1}
  std::vector<Mat> basis;
  for (int i = 1; i <= n; ++i) basis.push_back(Mat::unit(f, n + 1, n + 1, i - 1, i - 1));
  basis.push_back(Mat::unit(f, n + 1, n + 1, n, n));
  for (auto [i, j] : b.poset.strict_pairs())
    basis.push_back(Mat::unit(f, n + 1, n + 1, j - 1, i - 1));
  for (int i = 1; i <= n; ++i) basis.push_back(Mat::unit(f, n + 1, n + 1, n, i - 1));
  R.image = MatrixAlgebra(f, n + 1, std::move(basis), Mat::identity(f, n + 1), "R");

  Mat coords(f, R.image.dim(), R.abstract.dim());
  for (int l = 0; l < R.abstract.dim(); ++l) {
    Mat g = R.realize(b, R.abstract.basis[l]);
    auto c = R.image.coordinates(g);
    if (!c) throw ConsistencyError("right realization escapes the block algebra");
    for (int r = 0; r < R.image.dim(); ++r) coords.at(r, l) = c->at(r, 0);
    R.g_basis.push_back(std::move(g));
  }
  if (rank_of(coords) != R.abstract.dim() || R.abstract.dim() != R.image.dim())
    throw ConsistencyError("right realization is not an isomorphism");
  R.g_coords = coords;

  // embedded A: e_i -> E_ii, e_0 -> E_{n+1,n+1}, alpha_j -> E_{n+1,j}
  for (int z = 0; z < b.dimA(); ++z) {
    Mat g = R.realize(b, a_to_hom(b, true, z));
    Mat expect = z == 0               ? Mat::unit(f, n + 1, n + 1, n, n)
                 : z <= n             ? Mat::unit(f, n + 1, n + 1, z - 1, z - 1)
                                      : Mat::unit(f, n + 1, n + 1, n, z - n - 1);
    if (g != expect) throw ConsistencyError("embedded A has the wrong block form (right)");
    R.a_embed.push_back(std::move(g));
  }

  for (int i = 0; i <= n; ++i) {
    R.frame.labels.push_back(i);
    R.frame.idempotents.push_back(i == 0 ? Mat::unit(f, n + 1, n + 1, n, n)
                                         : Mat::unit(f, n + 1, n + 1, i - 1, i - 1));
  }
  return R;
}

RealizedAlgebra left_realization(const Bocs& b) {
  const Field& f = b.field;
  const int n = b.n;
  RealizedAlgebra L;
  L.right_side = false;
  L.abstract = hom_algebra(b, false);

  auto tl = [&](const Mat& m) {  // n x n -> top-left of 2n x 2n
    Mat out(f, 2 * n, 2 * n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) out.at(r, c) = m.at(r, c);
    return out;
  };
  auto tr = [&](const Mat& m) {
    Mat out(f, 2 * n, 2 * n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) out.at(r, n + c) = m.at(r, c);
    return out;
  };
  auto bl = [&](const Mat& m) {
    Mat out(f, 2 * n, 2 * n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) out.at(n + r, c) = m.at(r, c);
    return out;
  };
  auto br = [&](const Mat& m) {
    Mat out(f, 2 * n, 2 * n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) out.at(n + r, n + c) = m.at(r, c);
    return out;
  };

  RowBalanced rb = row_balanced(f, b.poset, default_marking(b.poset));
  std::vector<Mat> basis;
  for (int i = 1; i <= n; ++i) basis.push_back(tl(Mat::unit(f, n, n, i - 1, i - 1)));
  for (auto [i, j] : b.poset.strict_pairs()) basis.push_back(tl(Mat::unit(f, n, n, j - 1, i - 1)));
  for (const auto& m : rb.bimodule_basis) basis.push_back(tr(m));
  for (int i = 1; i <= n; ++i) basis.push_back(bl(Mat::unit(f, n, n, i - 1, i - 1)));
  for (auto [i, j] : b.poset.strict_pairs()) basis.push_back(bl(Mat::unit(f, n, n, j - 1, i - 1)));
  for (const auto& m : rb.algebra.basis()) basis.push_back(br(m));
  L.image = MatrixAlgebra(f, 2 * n, std::move(basis), Mat::identity(f, 2 * n), "L");

  Mat coords(f, L.image.dim(), L.abstract.dim());
  Mat alpha_prime(f, 2 * n, 1);
  for (int i = 0; i < n; ++i) alpha_prime.at(n + i, 0) = f.one();
  for (int l = 0; l < L.abstract.dim(); ++l) {
    Mat g = L.realize(b, L.abstract.basis[l]);
    auto c = L.image.coordinates(g);
    if (!c) throw ConsistencyError("left realization escapes the block algebra");
    for (int r = 0; r < L.image.dim(); ++r) coords.at(r, l) = c->at(r, 0);
    // L alpha' = K alpha'
    Mat ga = g * alpha_prime;
    for (int r = 0; r < n; ++r)
      if (!ga.at(r, 0).is_zero()) throw ConsistencyError("L alpha' escapes K alpha'");
    for (int r = 1; r < n; ++r)
      if (ga.at(n + r, 0) != ga.at(n, 0)) throw ConsistencyError("L alpha' escapes K alpha'");
    L.g_basis.push_back(std::move(g));
  }
  if (rank_of(coords) != L.abstract.dim() || L.abstract.dim() != L.image.dim())
    throw ConsistencyError("left realization is not an isomorphism");
  L.g_coords = coords;

  // embedded A: e_i -> E_ii, alpha_i -> E_{n+i,i}, e_0 -> sum E_{n+i,n+i}
  for (int z = 0; z < b.dimA(); ++z) {
    Mat g = L.realize(b, a_to_hom(b, false, z));
    Mat expect(f, 2 * n, 2 * n);
    if (z == 0)
      for (int i = 0; i < n; ++i) expect.at(n + i, n + i) = f.one();
    else if (z <= n)
      expect.at(z - 1, z - 1) = f.one();
    else
      expect.at(n + (z - n) - 1, (z - n) - 1) = f.one();
    if (g != expect) throw ConsistencyError("embedded A has the wrong block form (left)");
    L.a_embed.push_back(std::move(g));
  }

  for (int i = 1; i <= n; ++i) {
    L.frame.labels.push_back(i);
    L.frame.idempotents.push_back(tl(Mat::unit(f, n, n, i - 1, i - 1)));
  }
  L.frame.labels.push_back(0);
  L.frame.idempotents.push_back(br(rb.eps0));
  return L;
}

LeftFrame idempotent_frame(const Bocs& b, const RealizedAlgebra& left, const MinimalMarking& m) {
  const Field& f = b.field;
  const int n = b.n;
  RowBalanced rb = row_balanced(f, b.poset, m);
  auto embed = [&](const Mat& mat, bool top, bool leftcol) {
    Mat out(f, 2 * n, 2 * n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        out.at((top ? 0 : n) + r, (leftcol ? 0 : n) + c) = mat.at(r, c);
    return out;
  };
  LeftFrame X;
  for (int i = 1; i <= n; ++i) X.I.push_back(embed(Mat::unit(f, n, n, i - 1, i - 1), true, true));
  for (size_t t = 0; t < rb.derived.size(); ++t) X.J.push_back(embed(rb.eps[t], false, false));
  X.J0 = embed(rb.eps0, false, false);
  X.I_E = Mat(f, 2 * n, 2 * n);
  X.I_0 = Mat(f, 2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    X.I_E.at(i, i) = f.one();
    X.I_0.at(n + i, n + i) = f.one();
  }

  std::vector<Mat> all = X.I;
  all.insert(all.end(), X.J.begin(), X.J.end());
  all.push_back(X.J0);
  Mat sum(f, 2 * n, 2 * n);
  for (const auto& x : all) {
    if (x * x != x) throw ConsistencyError("frame element not idempotent");
    if (!left.image.contains(x)) throw ConsistencyError("frame element not in the left algebra");
    sum = sum + x;
  }
  if (sum != Mat::identity(f, 2 * n)) throw ConsistencyError("frame does not sum to the identity");
  for (size_t a = 0; a < all.size(); ++a)
    for (size_t c = 0; c < all.size(); ++c)
      if (a != c && !(all[a] * all[c]).is_zero()) throw ConsistencyError("frame not orthogonal");

  // primitivity: the corner at each idempotent is local
  for (const auto& x : all) {
    MatrixAlgebra corner = left.image.corner(x, "corner");
    if (corner.dim() - corner.radical().dim() != 1)
      throw ConsistencyError("frame element not primitive");
  }

  // the idempotent isomorphisms between I_k and J_k for k in P'
  for (size_t t = 0; t < rb.derived.size(); ++t) {
    int k = rb.derived[t];
    Mat up = embed(rb.eps[t], true, false);                          // eps_k in the top-right block
    Mat down = embed(Mat::unit(f, n, n, k - 1, k - 1), false, true); // E_kk in the bottom-left block
    if (!left.image.contains(up) || !left.image.contains(down))
      throw ConsistencyError("idempotent isomorphism witnesses not in the algebra");
    if (up * down != X.I[k - 1] || down * up != X.J[t])
      throw ConsistencyError("idempotent isomorphism identities fail");
    // the n x n level identities behind them
    Mat ekk = Mat::unit(f, n, n, k - 1, k - 1);
    if (ekk * rb.eps[t] != rb.eps[t] || rb.eps[t] * ekk != ekk)
      throw ConsistencyError("E_kk / eps_k multiplication identities fail");
  }

  for (int i = 1; i <= n; ++i) {
    X.representatives.labels.push_back(i);
    X.representatives.idempotents.push_back(X.I[i - 1]);
  }
  X.representatives.labels.push_back(0);
  X.representatives.idempotents.push_back(X.J0);
  return X;
}

BasicLeft basic_left(const Bocs& b, const RealizedAlgebra& left, const MinimalMarking& m) {
  const Field& f = b.field;
  const int n = b.n;
  LeftFrame X = idempotent_frame(b, left, m);
  std::vector<int> minimals = b.poset.minimals();
  int nmin = static_cast<int>(minimals.size());

  Mat eps_tilde = Mat::identity(f, 2 * n);
  for (int j : b.poset.derived()) eps_tilde = eps_tilde - X.I[j - 1];

  // kept coordinates: top copies of the minimal vertices, then the whole
  // bottom block
  BasicLeft out;
  out.n_min = nmin;
  for (int i : minimals) out.kept.push_back(i - 1);
  for (int i = 0; i < n; ++i) out.kept.push_back(n + i);

  // corner basis, then re-blocked into Mat_{nmin + n}
  MatrixAlgebra corner = left.image.corner(eps_tilde, "corner");
  std::vector<int> dropped;
  for (int i = 0; i < 2 * n; ++i)
    if (std::find(out.kept.begin(), out.kept.end(), i) == out.kept.end()) dropped.push_back(i);
  for (const auto& bas : corner.basis())
    for (int r = 0; r < 2 * n; ++r)
      for (int c = 0; c < 2 * n; ++c)
        if ((std::find(dropped.begin(), dropped.end(), r) != dropped.end() ||
             std::find(dropped.begin(), dropped.end(), c) != dropped.end()) &&
            !bas.at(r, c).is_zero())
          throw ConsistencyError("corner supported outside the kept block");

  std::vector<Mat> reblocked;
  for (const auto& bas : corner.basis()) reblocked.push_back(bas.submatrix(out.kept, out.kept));
  Mat unit = eps_tilde.submatrix(out.kept, out.kept);
  MatrixAlgebra alg(f, nmin + n, reblocked, unit, "L'");

  // expected block shape: diagonal top for min(P), bottom-left at pairs
  // (j, i) with i minimal <= j, bottom-right the row-balanced algebra
  {
    RowBalanced rb = row_balanced(f, b.poset, m);
    std::vector<Mat> canon;
    auto minpos = [&](int i) {
      return static_cast<int>(std::find(minimals.begin(), minimals.end(), i) - minimals.begin());
    };
    int N = nmin + n;
    for (int i : minimals) canon.push_back(Mat::unit(f, N, N, minpos(i), minpos(i)));
    for (int j = 1; j <= n; ++j)
      for (int i : minimals)
        if (b.poset.leq(i, j)) canon.push_back(Mat::unit(f, N, N, nmin + j - 1, minpos(i)));
    for (const auto& mat : rb.algebra.basis()) {
      Mat big(f, N, N);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) big.at(nmin + r, nmin + c) = mat.at(r, c);
      canon.push_back(big);
    }
    Mat rows1(f, 0, N * N), rows2(f, 0, N * N);
    for (const auto& x : canon) rows1 = vstack(rows1, x.vectorize());
    for (const auto& x : alg.basis()) rows2 = vstack(rows2, x.vectorize());
    if (!(Subspace::span_rows(rows1) == Subspace::span_rows(rows2)))
      throw ConsistencyError("basic left algebra does not match its block shape");
    // rebuild on the canonical ordered basis
    alg = MatrixAlgebra(f, N, canon, unit, "L'");
  }

  // lower triangular in the kept ordering
  for (const auto& x : alg.basis())
    for (int r = 0; r < alg.ambient(); ++r)
      for (int c = r + 1; c < alg.ambient(); ++c)
        if (!x.at(r, c).is_zero()) throw ConsistencyError("basic left algebra not lower triangular");

  // basic: semisimple quotient splits into one line per frame vertex
  Subspace rad = alg.radical();
  int n_frame = nmin + static_cast<int>(b.poset.derived().size()) + 1;
  if (alg.dim() - rad.dim() != n_frame) throw ConsistencyError("basic left algebra is not basic");

  // frame: tops for minimals, eps_k and eps_0 in the bottom block
  {
    RowBalanced rb = row_balanced(f, b.poset, m);
    auto minpos = [&](int i) {
      return static_cast<int>(std::find(minimals.begin(), minimals.end(), i) - minimals.begin());
    };
    int N = nmin + n;
    for (int i : minimals) {
      out.frame.labels.push_back(i);
      out.frame.idempotents.push_back(Mat::unit(f, N, N, minpos(i), minpos(i)));
    }
    auto lift = [&](const Mat& mat) {
      Mat big(f, N, N);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) big.at(nmin + r, nmin + c) = mat.at(r, c);
      return big;
    };
    for (size_t t = 0; t < rb.derived.size(); ++t) {
      out.frame.labels.push_back(rb.derived[t]);
      out.frame.idempotents.push_back(lift(rb.eps[t]));
    }
    out.frame.labels.push_back(0);
    out.frame.idempotents.push_back(lift(rb.eps0));
  }
  out.algebra = std::move(alg);
  return out;
}

}  // namespace posetbocs
