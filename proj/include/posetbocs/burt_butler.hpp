#pragma once

#include "posetbocs/bocs.hpp"
#include "posetbocs/incidence.hpp"

namespace posetbocs {

/// One side of the endomorphism algebra of the base algebra over the bocs:
/// A-linear maps U -> A with the convolution product driven by the
/// comultiplication. Elements are dimA x dimU matrices acting on U
/// coordinate columns.
struct HomAlgebra {
  bool right_side = true;
  std::vector<Mat> basis;
  Mat unit;  // the counit
  /// Injective restriction to generator values, with a cached pivot solver.
  Mat value_map;  // value_dim x (dimA*dimU), applied to vectorized homs
  std::vector<int> value_pivots;
  Mat value_solver;

  int dim() const { return static_cast<int>(basis.size()); }
  /// Coordinates in the basis; throws if the map is not in the span.
  Mat coordinates(const Mat& hom) const;
};

/// Basis constructed in closed form from the module decomposition of U, then
/// certified: every element is checked A-linear on all (a, u) pairs, the
/// family is independent, and a generator-value dimension bound shows it
/// spans the full Hom space.
HomAlgebra hom_algebra(const Bocs& b, bool right_side);

/// Convolution product: for the right side (f g)(u) = sum g(u1 . f(u2)),
/// for the left side (f g)(u) = sum f(g(u1) . u2), over the chosen lift
/// mu(u) = sum u1 (x) u2. The right side's product already carries the
/// opposite twist, so both match their matrix realizations directly.
Mat hom_product(const Bocs& b, bool right_side, const Mat& f, const Mat& g);

/// The embedding of A: z -> (u -> eps(u) z) on the right side,
/// z -> (u -> z eps(u)) on the left side.
Mat a_to_hom(const Bocs& b, bool right_side, int abstract_index);

struct RealizedAlgebra {
  bool right_side = true;
  HomAlgebra abstract;
  MatrixAlgebra image;
  VertexFrame frame;
  std::vector<Mat> g_basis;   // realization of each abstract basis element
  std::vector<Mat> a_embed;   // realization of the embedded A, per abstract A index
  Mat g_coords;               // image coordinates of g_basis, image.dim x abstract.dim

  /// Matrix of one hom element under the faithful action.
  Mat realize(const Bocs& b, const Mat& hom) const;
};

/// Faithful right action on e_0 A in the basis (alpha_1..alpha_n, e_0);
/// verifies the image is exactly the (incidence, 0; row, corner) block
/// algebra and that the embedded A lands on its stated block form.
RealizedAlgebra right_realization(const Bocs& b);

/// Faithful left action on A e' in the basis (e_1..e_n, alpha_1..alpha_n)
/// twisted by the second grouplike; verifies the image is the
/// (incidence, row-centralized; incidence, row-balanced) block algebra.
RealizedAlgebra left_realization(const Bocs& b);

/// The complete orthogonal primitive idempotent set of the left algebra:
/// I_i for i in P, J_k for k in P', J_0; verified primitive, orthogonal,
/// summing to the identity, with the explicit idempotent isomorphisms
/// between I_k and J_k.
struct LeftFrame {
  std::vector<Mat> I;   // per i in P
  std::vector<Mat> J;   // per k in P' (same order as derived())
  Mat J0, I_E, I_0;
  VertexFrame representatives;  // I_i labeled i, J0 labeled 0
};
LeftFrame idempotent_frame(const Bocs& b, const RealizedAlgebra& left, const MinimalMarking& m);

/// The basic algebra Morita equivalent to the left algebra: the corner at
/// 1 - sum I_j (j in P'), re-blocked into Mat_{n''+n} where n'' = #min(P).
struct BasicLeft {
  MatrixAlgebra algebra;
  VertexFrame frame;
  std::vector<int> kept;  // indices of Mat_{2n} kept by the re-blocking, in order
  int n_min = 0;
};
BasicLeft basic_left(const Bocs& b, const RealizedAlgebra& left, const MinimalMarking& m);

}  // namespace posetbocs
