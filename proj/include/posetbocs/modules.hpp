#pragma once

#include <map>
#include <memory>
#include <random>

#include "posetbocs/burt_butler.hpp"

namespace posetbocs {

/// Finite-dimensional left module over a matrix algebra: one action matrix
/// per algebra basis element, acting on coordinate columns.
struct FDModule {
  std::shared_ptr<const MatrixAlgebra> alg;
  int dim = 0;
  std::vector<Mat> action;

  Mat act(const Mat& alg_coords) const;
  /// Checks the action against the structure constants and the unit.
  void verify() const;
};

/// An algebra with its module bookkeeping: vertex frame, a complete
/// orthogonal idempotent set, the opposite algebra (for duals), a generating
/// subset of the basis, and the simple/projective/injective families.
struct ModuleEnv {
  std::shared_ptr<const MatrixAlgebra> alg;
  VertexFrame reps;
  std::vector<Mat> full_frame;
  std::vector<int> generators;  // basis indices generating the algebra
  Subspace rad = Subspace(Field::rationals(), 0);
  FDModule regular;
  std::map<int, FDModule> P, S, Q;
  std::map<int, Subspace> Pspace;  // P(label) inside the regular module
  std::shared_ptr<ModuleEnv> op;  // same labels, transposed idempotents

  const Field& field() const { return alg->field(); }
  int label_count() const { return static_cast<int>(reps.labels.size()); }
};

/// full_frame must be a complete set of orthogonal idempotents whose classes
/// are represented by `reps`.
std::shared_ptr<ModuleEnv> make_env(const MatrixAlgebra& alg, const VertexFrame& reps,
                                    const std::vector<Mat>& full_frame, bool build_opposite = true);

FDModule submodule(const FDModule& m, const Subspace& s);
FDModule quotient_module(const FDModule& m, const Subspace& s);
/// Smallest submodule containing the given row-vectors.
Subspace module_closure(const FDModule& m, const Mat& seed_rows);
FDModule direct_sum(const FDModule& a, const FDModule& b);
/// D(M) as a left module over the opposite algebra.
FDModule dual_module(const ModuleEnv& env, const FDModule& m);
Subspace socle(const ModuleEnv& env, const FDModule& m);
Subspace radical_submodule(const ModuleEnv& env, const FDModule& m);

/// Basis of intertwiners M -> N (matrices N.dim x M.dim) over a common algebra.
std::vector<Mat> hom_space(const ModuleEnv& env, const FDModule& m, const FDModule& n);
std::optional<Mat> find_iso(const ModuleEnv& env, const FDModule& m, const FDModule& n,
                            std::mt19937_64& rng);
int ext1_dim(ModuleEnv& env, const FDModule& m, const FDModule& n);

/// Projective cover P0 -> M: the module, the covering matrix, and the labels
/// (with multiplicity) of the summands.
struct Cover {
  FDModule p0;
  Mat map;  // M.dim x p0.dim
  std::vector<int> labels;
};
Cover projective_cover(ModuleEnv& env, const FDModule& m);
bool is_projective(ModuleEnv& env, const FDModule& m);
bool is_injective(ModuleEnv& env, const FDModule& m);

/// Largest quotient of P(label) whose composition factors S(j) satisfy
/// leq_qh(j, label); the dual notion is built over the opposite algebra.
FDModule standard_module(ModuleEnv& env, int label,
                         const std::function<bool(int, int)>& leq_qh);
FDModule costandard_module(ModuleEnv& env, int label,
                           const std::function<bool(int, int)>& leq_qh);

/// Quasi-hereditary data of both realized algebras, per the construction:
/// standards of the right algebra (suspended-opposite order) and
/// co-standards of the left algebra (suspended order), plus the Table-type
/// direct descriptions.
struct QHData {
  std::shared_ptr<ModuleEnv> env;
  std::map<int, FDModule> delta, nabla;
  std::function<bool(int, int)> leq_qh;
};
QHData right_qh_data(const Bocs& b, const RealizedAlgebra& right);
QHData left_qh_data(const Bocs& b, const RealizedAlgebra& left, const MinimalMarking& mk);

/// Environments for the realized algebras and their Borel/incidence pieces.
std::shared_ptr<ModuleEnv> right_env(const Bocs& b, const RealizedAlgebra& right);
std::shared_ptr<ModuleEnv> left_env(const Bocs& b, const RealizedAlgebra& left,
                                    const MinimalMarking& mk);
std::shared_ptr<ModuleEnv> incidence_env(const Field& f, const Poset& p);
std::shared_ptr<ModuleEnv> base_env(const Bocs& b);

/// Idempotent restriction along 1 - e_0 to the incidence algebra.
FDModule restrict0(const ModuleEnv& realized_env, const ModuleEnv& kp_env, const FDModule& m);
/// Trace of the vertex-0 simple: the sum of images of all maps S(0) -> M.
Subspace trace0(ModuleEnv& env, const FDModule& m);

/// Induction along the embedded base algebra into the right algebra, and
/// co-induction into the left algebra.
FDModule induce(const Bocs& b, const RealizedAlgebra& right, const ModuleEnv& renv,
                const FDModule& n);
FDModule coinduce(const Bocs& b, const RealizedAlgebra& left, const ModuleEnv& lenv,
                  const FDModule& n);

struct FiltrationCertificate {
  std::vector<Subspace> chain;  // proper submodules M_1 c ... c M_{r-1}, ascending
  std::vector<int> labels;      // labels of the r layers, bottom to top
};
/// Peeling oracle: repeatedly split off a top standard quotient (labels from
/// the poset first, the added vertex last), recursing into the kernel.
std::optional<FiltrationCertificate> delta_filtration(QHData& qh, const FDModule& m,
                                                      std::mt19937_64& rng);
/// Dual peeling by co-standard submodules, added vertex first.
std::optional<FiltrationCertificate> nabla_filtration(QHData& qh, const FDModule& m,
                                                      std::mt19937_64& rng);
/// Re-checks a certificate layer by layer with explicit intertwiners.
bool verify_filtration(QHData& qh, const FDModule& m, const FiltrationCertificate& cert,
                       bool delta_side, std::mt19937_64& rng);

/// The two equivalent characterizations of (co-)induced modules: filtration
/// existence versus projectivity/injectivity of the idempotent restriction.
/// Disagreement throws ConsistencyError.
bool check_coinduced_characterization(QHData& qh, ModuleEnv& kp_env, const FDModule& m,
                                      bool right_side, std::mt19937_64& rng);

/// Random representation of the base algebra: vertex spaces with total
/// dimension <= max_dim, arrow entries from {-1, 0, 1, 2}.
FDModule random_base_module(const Bocs& b, const ModuleEnv& aenv, int max_dim,
                            std::mt19937_64& rng);
/// Random quotient of a small sum of projectives.
FDModule random_module(ModuleEnv& env, int summands, std::mt19937_64& rng);

/// Greedy scaled-basis isomorphism test against the incidence algebra of a
/// poset (for basic algebras with one-dimensional hom blocks).
bool incidence_isomorphic(const ModuleEnv& env, const Poset& q);

}  // namespace posetbocs
