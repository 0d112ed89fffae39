#pragma once

#include <optional>
#include <vector>

#include "posetbocs/field.hpp"

namespace posetbocs {

/// Dense matrix over an exact field.
class Mat {
 public:
  Mat() : field_(Field::rationals()), rows_(0), cols_(0) {}
  Mat(const Field& f, int rows, int cols);
  static Mat identity(const Field& f, int n);
  /// E_{rc}: single 1 at (row r, col c), 0-based.
  static Mat unit(const Field& f, int rows, int cols, int r, int c);
  static Mat row_vector(const Field& f, const std::vector<Scalar>& entries);
  static Mat col_vector(const Field& f, const std::vector<Scalar>& entries);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const Field& field() const { return field_; }

  Scalar& at(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
  const Scalar& at(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

  Mat operator+(const Mat& b) const;
  Mat operator-(const Mat& b) const;
  Mat operator*(const Mat& b) const;
  Mat operator*(const Scalar& s) const;
  Mat operator-() const;
  bool operator==(const Mat& b) const;
  bool operator!=(const Mat& b) const { return !(*this == b); }

  bool is_zero() const;
  Mat transpose() const;
  Mat row(int r) const;
  Mat col(int c) const;
  /// Flatten to a 1 x (rows*cols) row vector, row-major.
  Mat vectorize() const;
  Mat submatrix(const std::vector<int>& rs, const std::vector<int>& cs) const;

  std::string str() const;

 private:
  Field field_;
  int rows_, cols_;
  std::vector<Scalar> a_;
};

Mat hstack(const Mat& a, const Mat& b);
Mat vstack(const Mat& a, const Mat& b);

struct RrefResult {
  Mat m;
  int rank;
  std::vector<int> pivots;  // pivot column per nonzero row
};

/// Reduced row-echelon form (Gauss-Jordan, exact).
RrefResult rref(const Mat& m);

/// Some x with a*x = b, or absent if the system is inconsistent.
/// Free variables are set to zero.
std::optional<Mat> solve(const Mat& a, const Mat& b);

/// Columns form a basis of { x : a*x = 0 }.
Mat kernel(const Mat& a);

int rank_of(const Mat& m);

}  // namespace posetbocs
