#pragma once

#include <string>
#include <vector>

#include "posetbocs/subspace.hpp"

namespace posetbocs {

/// Unital subalgebra of Mat_N(K) given by an ordered basis. Construction
/// verifies independence, closure under products, and that the declared unit
/// lies in the span and acts as a two-sided identity on it.
class MatrixAlgebra {
 public:
  MatrixAlgebra(const Field& f, int ambient, std::vector<Mat> basis, Mat unit, std::string label);
  /// Placeholder: the base field as a 1x1 algebra.
  MatrixAlgebra()
      : MatrixAlgebra(Field::rationals(), 1, {Mat::identity(Field::rationals(), 1)},
                      Mat::identity(Field::rationals(), 1), "K") {}

  const Field& field() const { return field_; }
  int ambient() const { return ambient_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const Mat& basis(int i) const { return basis_[i]; }
  const std::vector<Mat>& basis() const { return basis_; }
  const Mat& unit() const { return unit_; }
  const Mat& unit_coords() const { return unit_coords_; }
  const std::string& label() const { return label_; }
  const Subspace& span() const { return span_; }

  bool contains(const Mat& m) const { return span_.contains(m.vectorize()); }
  /// Coefficients in the ordered basis (dim x 1 column), if m lies in the algebra.
  std::optional<Mat> coordinates(const Mat& m) const;
  Mat element(const Mat& coords) const;

  /// Structure constants: basis(i)*basis(j) = sum_k c[k] basis(k), as the
  /// dim x 1 column for the pair (i, j).
  const Mat& product_coords(int i, int j) const { return mult_[i][j]; }
  /// Left multiplication operator by the element with the given coordinates,
  /// as a dim x dim matrix on coordinate columns.
  Mat left_mult(const Mat& coords) const;
  Mat right_mult(const Mat& coords) const;

  /// Jacobson radical as a subspace of the coordinate space K^dim.
  /// Exact over the rationals and over F_p (trace-form chain).
  Subspace radical() const;

  /// Corner algebra e*A*e for an idempotent e of A (basis filtered from
  /// {e b e}), labeled for reporting.
  MatrixAlgebra corner(const Mat& idem, const std::string& label) const;
  /// Same ambient matrices transposed; product reversed.
  MatrixAlgebra opposite() const;

 private:
  Field field_;
  int ambient_;
  std::vector<Mat> basis_;
  Mat unit_, unit_coords_;
  std::string label_;
  Subspace span_;
  std::vector<int> coord_pivots_;
  Mat coord_solver_;
  std::vector<std::vector<Mat>> mult_;
};

/// Spans closed under the stated one-sided multiplications; used for the
/// row-centralized subspace and similar bimodule blocks.
struct BimoduleSubspace {
  int ambient = 0;
  std::vector<Mat> basis;
  const MatrixAlgebra* left_algebra = nullptr;
  const MatrixAlgebra* right_algebra = nullptr;
};

/// Checks each left_alg.basis * b and b * right_alg.basis stays in the span.
void verify_bimodule_closure(const BimoduleSubspace& bm);

/// One chosen primitive idempotent per isomorphism class of simple modules,
/// tagged with its poset-side label (0 means the added vertex).
struct VertexFrame {
  std::vector<int> labels;
  std::vector<Mat> idempotents;
  int index_of(int label) const;
};

}  // namespace posetbocs
