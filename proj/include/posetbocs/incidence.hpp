#pragma once

#include "posetbocs/matrix_algebra.hpp"
#include "posetbocs/poset.hpp"

namespace posetbocs {

/// Incidence algebra KP inside Mat_n: span{ E_ji : i <= j in P }.
/// Basis order: diagonal E_ii ascending, then E_ji for i < j sorted by (j, i).
MatrixAlgebra incidence_algebra(const Field& f, const Poset& p);

/// Diagonal part and strict part of the incidence algebra.
std::vector<Mat> incidence_radical_basis(const Field& f, const Poset& p);

struct RowBalanced {
  /// K^1 P = { M in KP : M*ones in K*ones }.
  /// Basis order: eps_0, eps_j for j in P' ascending, then B_ji = E_ji - E_{j,m(j)}
  /// for i < j, i != m(j), sorted by (j, i).
  MatrixAlgebra algebra;
  /// K^1_0 P = { M in KP : M*ones = 0 }, basis E_jj - E_ji sorted by (j, i);
  /// a KP - K^1 P bimodule.
  std::vector<Mat> bimodule_basis;
  Mat eps0;
  std::vector<int> derived;  // P' labels, ascending; eps[t] belongs to derived[t]
  std::vector<Mat> eps;
  std::vector<std::pair<int, int>> rad_pairs;  // (i, j) per radical basis element, sorted by (j, i)
  std::vector<Mat> rad_basis;                  // B_ji in the same order
  MinimalMarking marking;

  /// B_ji = E_ji - E_{j,m(j)} as a matrix (zero when i = m(j)).
  Mat b(int j, int i) const;
  int n = 0;
};

RowBalanced row_balanced(const Field& f, const Poset& p, const MinimalMarking& m);

/// rad^2(K^1 P) computed two independent ways -- the closed combinatorial
/// form and brute-force products of radical basis pairs -- which must agree.
/// Returned as a subspace of Mat_n vectorized (ambient n*n).
Subspace rad_square_row_balanced(const Field& f, const Poset& p, const MinimalMarking& m,
                                 const OrbitData& orbit);

}  // namespace posetbocs
