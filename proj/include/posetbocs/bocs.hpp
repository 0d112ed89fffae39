#pragma once

#include "posetbocs/matrix_algebra.hpp"
#include "posetbocs/poset.hpp"
#include "posetbocs/tensor.hpp"

namespace posetbocs {

/// Tensor-algebra basis word of v-degree >= 1: an ascending chain
/// c0 < c1 < ... < cd of comparable elements (the factors v_{c0 c1} ... ),
/// optionally headed by alpha_{c0}.
struct TWord {
  bool has_alpha = false;
  std::vector<int> chain;
  bool operator==(const TWord& o) const { return has_alpha == o.has_alpha && chain == o.chain; }
  bool operator<(const TWord& o) const {
    return std::tie(has_alpha, chain) < std::tie(o.has_alpha, o.chain);
  }
};
using WordCombo = std::vector<std::pair<Scalar, TWord>>;

/// The bocs of a finite poset: base algebra A spanned by the trivial paths
/// and the arrows into the added vertex, bimodule U = omega*A + V with the
/// differential-driven comultiplication, and the two grouplike elements.
struct Bocs {
  Field field = Field::rationals();
  Poset poset;
  int n = 0;
  std::vector<std::pair<int, int>> vpairs;  // (i, j) with i < j, sorted by (i, j)

  /// Abstract A basis: 0 = e_0, 1..n = e_1..e_n, n+i = alpha_i.
  int dimA() const { return 2 * n + 1; }
  int dimU() const { return dimA() + 2 * static_cast<int>(vpairs.size()); }
  int a_e(int m) const { return m; }
  int a_alpha(int i) const { return n + i; }
  /// U basis: 0..n = omega*e_m, n+i = omega*alpha_i, then per pair t:
  /// v at u_v(t), alpha*v at u_av(t).
  int u_we(int m) const { return m; }
  int u_wa(int i) const { return n + i; }
  int u_v(int t) const { return dimA() + 2 * t; }
  int u_av(int t) const { return dimA() + 2 * t + 1; }
  int vpair_index(int i, int j) const;

  /// Matrix realization of A in Mat_{n+1}: basis order matches the abstract
  /// indices (e_0 -> E_{n+1,n+1}, e_m -> E_mm, alpha_i -> E_{n+1,i}).
  MatrixAlgebra a_img;
  VertexFrame a_frame;

  std::vector<Mat> left_act, right_act;  // per abstract A index, dimU x dimU
  Mat counit;                            // dimA x dimU
  std::vector<std::vector<std::tuple<Scalar, int, int>>> mu_lift;  // chosen tensors per U index
  Mat omega, omega_prime;                                          // dimU x 1

  /// Product in A on abstract coordinate columns.
  Mat a_mul(const Mat& x, const Mat& y) const;
  /// a . u and u . a for coordinate columns.
  Mat act_left(const Mat& a, const Mat& u) const;
  Mat act_right(const Mat& u, const Mat& a) const;
  Mat apply_hom(const Mat& hom, const Mat& u) const { return hom * u; }

  TensorQuotient uu;  // U (x)_A U
  Mat mu_of(int u_index) const;  // mu projected into uu coordinates
  Mat mu_of_vec(const Mat& u) const;
};

/// Differential on generators, extended to basis words by the Leibniz rule.
WordCombo delta_alpha(const Field& f, const Poset& p, int i);
WordCombo delta_word(const Field& f, const Poset& p, const TWord& w);
void normalize(WordCombo& combo);

Bocs build_bocs(const Field& f, const Poset& p);

/// Verifies every structural identity of the construction: delta^2 = 0 on
/// generators, counit triangles, coassociativity, mu and eps are bimodule
/// maps, grouplike identities for both grouplikes, ker(eps) = V with its
/// summand-wise bimodule decomposition, directedness and no parallel arrows.
/// Throws ConsistencyError with the failing check's name.
void verify_bocs(const Bocs& b);

}  // namespace posetbocs
