#include "posetbocs/bocs.hpp"

#include <algorithm>
#include <map>

namespace posetbocs {

int Bocs::vpair_index(int i, int j) const {
  auto it = std::lower_bound(vpairs.begin(), vpairs.end(), std::make_pair(i, j));
  if (it == vpairs.end() || *it != std::make_pair(i, j))
    throw std::invalid_argument("no relation pair (" + std::to_string(i) + "," + std::to_string(j) + ")");
  return static_cast<int>(it - vpairs.begin());
}

Mat Bocs::a_mul(const Mat& x, const Mat& y) const {
  Mat prod = a_img.element(x) * a_img.element(y);
  auto c = a_img.coordinates(prod);
  if (!c) throw ConsistencyError("A product escaped the algebra");
  return *c;
}

Mat Bocs::act_left(const Mat& a, const Mat& u) const {
  Mat out(field, dimU(), 1);
  for (int t = 0; t < dimA(); ++t)
    if (!a.at(t, 0).is_zero()) out = out + left_act[t] * u * a.at(t, 0);
  return out;
}

Mat Bocs::act_right(const Mat& u, const Mat& a) const {
  Mat out(field, dimU(), 1);
  for (int t = 0; t < dimA(); ++t)
    if (!a.at(t, 0).is_zero()) out = out + right_act[t] * u * a.at(t, 0);
  return out;
}

Mat Bocs::mu_of(int u_index) const {
  SparseVec big;
  for (const auto& [c, x, y] : mu_lift[u_index]) big.emplace_back(uu.big(x, y), c);
  sparse_normalize(big);
  return uu.project(big);
}

Mat Bocs::mu_of_vec(const Mat& u) const {
  Mat out(field, uu.dim, 1);
  for (int t = 0; t < dimU(); ++t)
    if (!u.at(t, 0).is_zero()) out = out + mu_of(t) * u.at(t, 0);
  return out;
}

void normalize(WordCombo& combo) {
  std::sort(combo.begin(), combo.end(),
            [](const auto& a, const auto& b) { return a.second < b.second; });
  WordCombo out;
  for (auto& [c, w] : combo) {
    if (!out.empty() && out.back().second == w)
      out.back().first += c;
    else
      out.emplace_back(c, w);
  }
  out.erase(std::remove_if(out.begin(), out.end(), [](const auto& p) { return p.first.is_zero(); }),
            out.end());
  combo = std::move(out);
}

WordCombo delta_alpha(const Field& f, const Poset& p, int i) {
  WordCombo out;
  for (int h : p.lower(i)) out.emplace_back(-f.one(), TWord{true, {h, i}});
  return out;
}

WordCombo delta_word(const Field& f, const Poset& p, const TWord& w) {
  WordCombo out;
  // head: delta(alpha_{c0}) * rest, sign +
  if (w.has_alpha) {
    for (int h : p.lower(w.chain.front())) {
      TWord nw = w;
      nw.chain.insert(nw.chain.begin(), h);
      out.emplace_back(-f.one(), std::move(nw));
    }
  }
  // v factors: v_{c_{t-1} c_t} expands over intermediate vertices, sign (-1)^{t-1}
  for (size_t t = 1; t < w.chain.size(); ++t) {
    Scalar sign = (t % 2 == 1) ? f.one() : -f.one();
    for (int k = w.chain[t - 1] + 1; k < w.chain[t]; ++k) {
      if (!(p.less(w.chain[t - 1], k) && p.less(k, w.chain[t]))) continue;
      TWord nw = w;
      nw.chain.insert(nw.chain.begin() + static_cast<long>(t), k);
      out.emplace_back(sign, std::move(nw));
    }
  }
  normalize(out);
  return out;
}

Bocs build_bocs(const Field& f, const Poset& p) {
  Bocs b;
  b.field = f;
  b.poset = p;
  b.n = p.size();
  b.vpairs = p.strict_pairs();
  std::sort(b.vpairs.begin(), b.vpairs.end());
  const int n = b.n, dA = b.dimA(), dU = b.dimU();

  // matrix realization of A
  {
    std::vector<Mat> basis;
    basis.push_back(Mat::unit(f, n + 1, n + 1, n, n));  // e_0
    for (int m = 1; m <= n; ++m) basis.push_back(Mat::unit(f, n + 1, n + 1, m - 1, m - 1));
    for (int i = 1; i <= n; ++i) basis.push_back(Mat::unit(f, n + 1, n + 1, n, i - 1));
    b.a_img = MatrixAlgebra(f, n + 1, std::move(basis), Mat::identity(f, n + 1), "A");
    b.a_frame.labels.push_back(0);
    b.a_frame.idempotents.push_back(b.a_img.basis(0));
    for (int m = 1; m <= n; ++m) {
      b.a_frame.labels.push_back(m);
      b.a_frame.idempotents.push_back(b.a_img.basis(m));
    }
  }

  // actions of the abstract A basis on U
  b.left_act.assign(dA, Mat(f, dU, dU));
  b.right_act.assign(dA, Mat(f, dU, dU));
  auto L = [&](int a, int to, int from, long c) { b.left_act[a].at(to, from) += f.from_int(c); };
  auto R = [&](int a, int to, int from, long c) { b.right_act[a].at(to, from) += f.from_int(c); };
  for (int m = 0; m <= n; ++m) {
    L(b.a_e(m), b.u_we(m), b.u_we(m), 1);   // e_m . (w e_m)
    R(b.a_e(m), b.u_we(m), b.u_we(m), 1);   // (w e_m) . e_m
  }
  for (int i = 1; i <= n; ++i) {
    L(b.a_e(0), b.u_wa(i), b.u_wa(i), 1);       // e_0 . (w alpha_i)
    R(b.a_e(i), b.u_wa(i), b.u_wa(i), 1);       // (w alpha_i) . e_i
    R(b.a_alpha(i), b.u_wa(i), b.u_we(0), 1);   // (w e_0) . alpha_i
    // alpha_i . (w e_i) = w alpha_i - sum_{h<i} alpha_h v_{hi}
    L(b.a_alpha(i), b.u_wa(i), b.u_we(i), 1);
    for (int h : p.lower(i)) L(b.a_alpha(i), b.u_av(b.vpair_index(h, i)), b.u_we(i), -1);
  }
  for (size_t t = 0; t < b.vpairs.size(); ++t) {
    auto [i, j] = b.vpairs[t];
    int vt = b.u_v(static_cast<int>(t)), at = b.u_av(static_cast<int>(t));
    L(b.a_e(i), vt, vt, 1);
    L(b.a_e(0), at, at, 1);
    L(b.a_alpha(i), at, vt, 1);  // alpha_i . v_{ij}
    R(b.a_e(j), vt, vt, 1);
    R(b.a_e(j), at, at, 1);
  }

  // counit
  b.counit = Mat(f, dA, dU);
  for (int m = 0; m <= n; ++m) b.counit.at(b.a_e(m), b.u_we(m)) = f.one();
  for (int i = 1; i <= n; ++i) b.counit.at(b.a_alpha(i), b.u_wa(i)) = f.one();

  // grouplikes
  b.omega = Mat(f, dU, 1);
  for (int m = 0; m <= n; ++m) b.omega.at(b.u_we(m), 0) = f.one();
  b.omega_prime = b.omega;
  for (size_t t = 0; t < b.vpairs.size(); ++t) b.omega_prime.at(b.u_v(static_cast<int>(t)), 0) = f.one();

  // comultiplication, as a chosen lift into U (x)_K U
  b.mu_lift.assign(dU, {});
  auto v_of_word = [&](const TWord& w) {
    // degree-1 word -> U index
    int t = b.vpair_index(w.chain[0], w.chain[1]);
    return w.has_alpha ? b.u_av(t) : b.u_v(t);
  };
  for (int m = 0; m <= n; ++m)
    for (int l = 0; l <= n; ++l) b.mu_lift[b.u_we(m)].emplace_back(f.one(), b.u_we(l), b.u_we(m));
  for (int i = 1; i <= n; ++i)
    for (int l = 0; l <= n; ++l) b.mu_lift[b.u_wa(i)].emplace_back(f.one(), b.u_we(l), b.u_wa(i));
  for (size_t t = 0; t < b.vpairs.size(); ++t) {
    auto [i, j] = b.vpairs[t];
    for (int uidx : {b.u_v(static_cast<int>(t)), b.u_av(static_cast<int>(t))}) {
      // delta part: split each degree-2 word into first-factor (x) second-factor
      TWord base{uidx == b.u_av(static_cast<int>(t)), {i, j}};
      for (const auto& [c, w2] : delta_word(f, p, base)) {
        TWord first{w2.has_alpha, {w2.chain[0], w2.chain[1]}};
        TWord second{false, {w2.chain[1], w2.chain[2]}};
        b.mu_lift[uidx].emplace_back(c, v_of_word(first), v_of_word(second));
      }
      // omega (x) u + u (x) omega
      for (int l = 0; l <= n; ++l) {
        b.mu_lift[uidx].emplace_back(f.one(), b.u_we(l), uidx);
        b.mu_lift[uidx].emplace_back(f.one(), uidx, b.u_we(l));
      }
    }
  }

  b.uu = tensor_over_algebra(f, dU, b.right_act, dU, b.left_act);
  return b;
}

namespace {

Mat e_col(const Field& f, int dim, int i) { return Mat::unit(f, dim, 1, i, 0); }

}  // namespace

void verify_bocs(const Bocs& b) {
  const Field& f = b.field;
  const Poset& p = b.poset;
  const int dA = b.dimA(), dU = b.dimU();

  // delta^2 = 0 on all generators
  for (int i = 1; i <= b.n; ++i) {
    WordCombo dd;
    for (const auto& [c, w] : delta_alpha(f, p, i))
      for (const auto& [c2, w2] : delta_word(f, p, w)) dd.emplace_back(c * c2, w2);
    normalize(dd);
    if (!dd.empty()) throw ConsistencyError("delta^2 (alpha) nonzero");
  }
  for (auto [i, j] : b.vpairs) {
    WordCombo dd;
    for (const auto& [c, w] : delta_word(f, p, TWord{false, {i, j}}))
      for (const auto& [c2, w2] : delta_word(f, p, w)) dd.emplace_back(c * c2, w2);
    normalize(dd);
    if (!dd.empty()) throw ConsistencyError("delta^2 (v) nonzero");
  }

  // base algebra shape: rad(A) = <alpha>, rad^2 = 0, e_i e_j = delta e_i
  {
    Subspace rad = b.a_img.radical();
    Mat expect(f, 0, dA);
    for (int i = 1; i <= b.n; ++i) expect = vstack(expect, e_col(f, dA, b.a_alpha(i)).transpose());
    if (!(rad == Subspace::span_rows(expect))) throw ConsistencyError("rad(A) is not <alpha_1..alpha_n>");
    for (int i = 1; i <= b.n; ++i)
      for (int j = 1; j <= b.n; ++j)
        if (!(b.a_img.basis(b.a_alpha(i)) * b.a_img.basis(b.a_alpha(j))).is_zero())
          throw ConsistencyError("rad^2(A) nonzero");
  }

  // counit triangles: (1 (x) eps) mu = id = (eps (x) 1) mu on every U basis element
  for (int u = 0; u < dU; ++u) {
    Mat left(f, dU, 1), right(f, dU, 1);
    for (const auto& [c, x, y] : b.mu_lift[u]) {
      right = right + b.act_right(e_col(f, dU, x), b.counit * e_col(f, dU, y)) * c;
      left = left + b.act_left(b.counit * e_col(f, dU, x), e_col(f, dU, y)) * c;
    }
    if (left != e_col(f, dU, u) || right != e_col(f, dU, u))
      throw ConsistencyError("counit triangle fails");
  }

  // mu and eps are bimodule maps
  for (int a = 0; a < dA; ++a) {
    Mat acol = e_col(f, dA, a);
    for (int u = 0; u < dU; ++u) {
      Mat ucol = e_col(f, dU, u);
      if (b.counit * b.act_left(acol, ucol) != b.a_mul(acol, b.counit * ucol))
        throw ConsistencyError("eps not left A-linear");
      if (b.counit * b.act_right(ucol, acol) != b.a_mul(b.counit * ucol, acol))
        throw ConsistencyError("eps not right A-linear");
      // mu(a.u) = a.mu(u) and mu(u.a) = mu(u).a inside U (x)_A U
      Mat lhsL = b.mu_of_vec(b.act_left(acol, ucol));
      Mat rhsL(f, b.uu.dim, 1);
      for (const auto& [c, x, y] : b.mu_lift[u]) {
        Mat ax = b.act_left(acol, e_col(f, dU, x));
        SparseVec big;
        for (int k = 0; k < dU; ++k)
          if (!ax.at(k, 0).is_zero()) big.emplace_back(b.uu.big(k, y), ax.at(k, 0) * c);
        sparse_normalize(big);
        rhsL = rhsL + b.uu.project(big);
      }
      if (lhsL != rhsL) throw ConsistencyError("mu not left A-linear");
      Mat lhsR = b.mu_of_vec(b.act_right(ucol, acol));
      Mat rhsR(f, b.uu.dim, 1);
      for (const auto& [c, x, y] : b.mu_lift[u]) {
        Mat ya = b.act_right(e_col(f, dU, y), acol);
        SparseVec big;
        for (int k = 0; k < dU; ++k)
          if (!ya.at(k, 0).is_zero()) big.emplace_back(b.uu.big(x, k), ya.at(k, 0) * c);
        sparse_normalize(big);
        rhsR = rhsR + b.uu.project(big);
      }
      if (lhsR != rhsR) throw ConsistencyError("mu not right A-linear");
    }
  }

  // coassociativity inside U (x)_A (U (x)_A U)
  {
    // left action of A on the quotient uu: a.(x (x) y) = (a.x) (x) y
    std::vector<Mat> uu_left(dA, Mat(f, b.uu.dim, b.uu.dim));
    for (int a = 0; a < dA; ++a)
      for (int q = 0; q < b.uu.dim; ++q) {
        int x = b.uu.reps[q] / dU, y = b.uu.reps[q] % dU;
        Mat ax = b.left_act[a] * e_col(f, dU, x);
        SparseVec big;
        for (int k = 0; k < dU; ++k)
          if (!ax.at(k, 0).is_zero()) big.emplace_back(b.uu.big(k, y), ax.at(k, 0));
        Mat col = b.uu.project(big);
        for (int r = 0; r < b.uu.dim; ++r) uu_left[a].at(r, q) = col.at(r, 0);
      }
    TensorQuotient triple = tensor_over_algebra(f, dU, b.right_act, b.uu.dim, uu_left);
    for (int u = 0; u < dU; ++u) {
      // (1 (x) mu) mu
      Mat lhs(f, triple.dim, 1);
      for (const auto& [c, x, y] : b.mu_lift[u]) {
        Mat muy = b.mu_of(y);
        SparseVec big;
        for (int q = 0; q < b.uu.dim; ++q)
          if (!muy.at(q, 0).is_zero()) big.emplace_back(triple.big(x, q), muy.at(q, 0) * c);
        sparse_normalize(big);
        lhs = lhs + triple.project(big);
      }
      // (mu (x) 1) mu, reassociated
      Mat rhs(f, triple.dim, 1);
      for (const auto& [c, x, y] : b.mu_lift[u])
        for (const auto& [c2, x1, x2] : b.mu_lift[x]) {
          Mat inner = b.uu.project_pair(x2, y);
          SparseVec big;
          for (int q = 0; q < b.uu.dim; ++q)
            if (!inner.at(q, 0).is_zero()) big.emplace_back(triple.big(x1, q), inner.at(q, 0) * c * c2);
          sparse_normalize(big);
          rhs = rhs + triple.project(big);
        }
      if (lhs != rhs) throw ConsistencyError("coassociativity fails");
    }
  }

  // grouplike identities for omega and omega'
  for (const Mat* g : {&b.omega, &b.omega_prime}) {
    if (b.counit * *g != b.a_img.unit_coords()) throw ConsistencyError("eps(grouplike) != 1");
    SparseVec gg;
    for (int x = 0; x < dU; ++x)
      for (int y = 0; y < dU; ++y) {
        Scalar c = g->at(x, 0) * g->at(y, 0);
        if (!c.is_zero()) gg.emplace_back(b.uu.big(x, y), c);
      }
    sparse_normalize(gg);
    if (b.mu_of_vec(*g) != b.uu.project(gg)) throw ConsistencyError("mu(g) != g (x) g");
  }

  // omega' commutes with e_0, e' and alpha'
  {
    Mat e0 = e_col(f, dA, 0);
    Mat ep(f, dA, 1), ap(f, dA, 1);
    for (int i = 1; i <= b.n; ++i) ep.at(b.a_e(i), 0) = f.one();
    for (int i = 1; i <= b.n; ++i) ap.at(b.a_alpha(i), 0) = f.one();
    for (const Mat* z : {&e0, &ep, &ap})
      if (b.act_left(*z, b.omega_prime) != b.act_right(b.omega_prime, *z))
        throw ConsistencyError("omega' does not commute with e0/e'/alpha'");
  }

  // ker eps = V, with its pairwise bimodule decomposition
  {
    Mat k = kernel(b.counit);
    Subspace kere = Subspace::span_rows(k.transpose());
    Mat vrows(f, 0, dU);
    for (size_t t = 0; t < b.vpairs.size(); ++t) {
      vrows = vstack(vrows, e_col(f, dU, b.u_v(static_cast<int>(t))).transpose());
      vrows = vstack(vrows, e_col(f, dU, b.u_av(static_cast<int>(t))).transpose());
    }
    if (!(kere == Subspace::span_rows(vrows))) throw ConsistencyError("ker eps != V");

    // V = (+) K v_{ij} + K alpha_i v_{ij}, each summand iso to Ae_i (x) e_j A
    // under v_{ij} -> e_i (x) e_j, alpha_i v_{ij} -> alpha_i (x) e_j
    for (size_t t = 0; t < b.vpairs.size(); ++t) {
      auto [i, j] = b.vpairs[t];
      int vt = b.u_v(static_cast<int>(t)), at = b.u_av(static_cast<int>(t));
      for (int a = 0; a < dA; ++a) {
        Mat acol = e_col(f, dA, a);
        // left action on the summand matches the action on Ae_i (x) e_j A:
        // a.(x (x) e_j) = (a x) (x) e_j with x in {e_i, alpha_i}
        Mat av = b.act_left(acol, e_col(f, dU, vt));
        Mat ax = b.a_mul(acol, e_col(f, dA, b.a_e(i)));
        Mat expect(f, dU, 1);
        expect = expect + e_col(f, dU, vt) * ax.at(b.a_e(i), 0);
        expect = expect + e_col(f, dU, at) * ax.at(b.a_alpha(i), 0);
        if (av != expect) throw ConsistencyError("summand left action mismatch (v)");
        Mat aav = b.act_left(acol, e_col(f, dU, at));
        Mat axa = b.a_mul(acol, e_col(f, dA, b.a_alpha(i)));
        Mat expect2 = e_col(f, dU, vt) * axa.at(b.a_e(i), 0) + e_col(f, dU, at) * axa.at(b.a_alpha(i), 0);
        if (aav != expect2) throw ConsistencyError("summand left action mismatch (alpha v)");
        // right action: (x (x) e_j).a = x (x) (e_j a), e_j A = K e_j
        Mat va = b.act_right(e_col(f, dU, vt), acol);
        Mat ja = b.a_mul(e_col(f, dA, b.a_e(j)), acol);
        if (va != e_col(f, dU, vt) * ja.at(b.a_e(j), 0))
          throw ConsistencyError("summand right action mismatch (v)");
        Mat ava = b.act_right(e_col(f, dU, at), acol);
        if (ava != e_col(f, dU, at) * ja.at(b.a_e(j), 0))
          throw ConsistencyError("summand right action mismatch (alpha v)");
      }
    }
  }

  // directedness of A: Hom(P(j), P(i)) = e_j A e_i != 0 only for j = i or j = 0
  for (int jj = 0; jj <= b.n; ++jj)
    for (int ii = 0; ii <= b.n; ++ii) {
      bool nonzero = false;
      for (int t = 0; t < dA; ++t)
        nonzero |= !(b.a_frame.idempotents[jj] * b.a_img.basis(t) * b.a_frame.idempotents[ii]).is_zero();
      if (nonzero && !(jj == ii || jj == 0))
        throw ConsistencyError("A is not directed for the suspended opposite order");
    }

  // no parallel arrows in the defining quiver
  {
    std::vector<std::pair<int, int>> ends;
    for (int i = 1; i <= b.n; ++i) ends.emplace_back(i, 0);          // alpha_i: i -> 0
    for (auto [i, j] : b.vpairs) ends.emplace_back(j, i + b.n + 1);  // v_{ij}: j -> i, offset to avoid clashes
    std::sort(ends.begin(), ends.end());
    if (std::adjacent_find(ends.begin(), ends.end()) != ends.end())
      throw ConsistencyError("parallel arrows in the bocs quiver");
  }
}

}  // namespace posetbocs
