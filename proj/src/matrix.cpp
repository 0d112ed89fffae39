#include "posetbocs/matrix.hpp"

#include <sstream>

namespace posetbocs {

Mat::Mat(const Field& f, int rows, int cols) : field_(f), rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix size");
  a_.assign(static_cast<size_t>(rows) * cols, f.zero());
}

Mat Mat::identity(const Field& f, int n) {
  Mat m(f, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = f.one();
  return m;
}

Mat Mat::unit(const Field& f, int rows, int cols, int r, int c) {
  Mat m(f, rows, cols);
  m.at(r, c) = f.one();
  return m;
}

Mat Mat::row_vector(const Field& f, const std::vector<Scalar>& entries) {
  Mat m(f, 1, static_cast<int>(entries.size()));
  for (size_t i = 0; i < entries.size(); ++i) m.at(0, static_cast<int>(i)) = entries[i];
  return m;
}

Mat Mat::col_vector(const Field& f, const std::vector<Scalar>& entries) {
  Mat m(f, static_cast<int>(entries.size()), 1);
  for (size_t i = 0; i < entries.size(); ++i) m.at(static_cast<int>(i), 0) = entries[i];
  return m;
}

static void check_same_shape(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("matrix shape mismatch");
}

Mat Mat::operator+(const Mat& b) const {
  check_same_shape(*this, b);
  Mat r(field_, rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + b.a_[i];
  return r;
}

Mat Mat::operator-(const Mat& b) const {
  check_same_shape(*this, b);
  Mat r(field_, rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - b.a_[i];
  return r;
}

Mat Mat::operator*(const Mat& b) const {
  if (cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
  Mat r(field_, rows_, b.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Scalar& x = at(i, k);
      if (x.is_zero()) continue;
      for (int j = 0; j < b.cols_; ++j) {
        const Scalar& y = b.at(k, j);
        if (!y.is_zero()) r.at(i, j) += x * y;
      }
    }
  return r;
}

Mat Mat::operator*(const Scalar& s) const {
  Mat r(field_, rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * s;
  return r;
}

Mat Mat::operator-() const {
  Mat r(field_, rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = -a_[i];
  return r;
}

bool Mat::operator==(const Mat& b) const {
  if (rows_ != b.rows_ || cols_ != b.cols_) return false;
  for (size_t i = 0; i < a_.size(); ++i)
    if (a_[i] != b.a_[i]) return false;
  return true;
}

bool Mat::is_zero() const {
  for (const auto& x : a_)
    if (!x.is_zero()) return false;
  return true;
}

Mat Mat::transpose() const {
  Mat r(field_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

Mat Mat::row(int r) const {
  Mat m(field_, 1, cols_);
  for (int j = 0; j < cols_; ++j) m.at(0, j) = at(r, j);
  return m;
}

Mat Mat::col(int c) const {
  Mat m(field_, rows_, 1);
  for (int i = 0; i < rows_; ++i) m.at(i, 0) = at(i, c);
  return m;
}

Mat Mat::vectorize() const {
  Mat m(field_, 1, rows_ * cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m.at(0, i * cols_ + j) = at(i, j);
  return m;
}

Mat Mat::submatrix(const std::vector<int>& rs, const std::vector<int>& cs) const {
  Mat m(field_, static_cast<int>(rs.size()), static_cast<int>(cs.size()));
  for (size_t i = 0; i < rs.size(); ++i)
    for (size_t j = 0; j < cs.size(); ++j) m.at(static_cast<int>(i), static_cast<int>(j)) = at(rs[i], cs[j]);
  return m;
}

std::string Mat::str() const {
  std::ostringstream os;
  for (int i = 0; i < rows_; ++i) {
    os << "[";
    for (int j = 0; j < cols_; ++j) os << (j ? " " : "") << at(i, j).str();
    os << "]" << (i + 1 < rows_ ? "\n" : "");
  }
  return os.str();
}

Mat hstack(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hstack row mismatch");
  Mat r(a.field(), a.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
    for (int j = 0; j < b.cols(); ++j) r.at(i, a.cols() + j) = b.at(i, j);
  }
  return r;
}

Mat vstack(const Mat& a, const Mat& b) {
  if (a.cols() != b.cols()) throw std::invalid_argument("vstack col mismatch");
  Mat r(a.field(), a.rows() + b.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) r.at(a.rows() + i, j) = b.at(i, j);
  return r;
}

RrefResult rref(const Mat& m) {
  Mat r = m;
  std::vector<int> pivots;
  int prow = 0;
  for (int col = 0; col < r.cols() && prow < r.rows(); ++col) {
    int sel = -1;
    for (int i = prow; i < r.rows(); ++i)
      if (!r.at(i, col).is_zero()) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    if (sel != prow)
      for (int j = 0; j < r.cols(); ++j) std::swap(r.at(sel, j), r.at(prow, j));
    Scalar inv = r.at(prow, col).inv();
    for (int j = col; j < r.cols(); ++j) r.at(prow, j) = r.at(prow, j) * inv;
    for (int i = 0; i < r.rows(); ++i) {
      if (i == prow) continue;
      Scalar f = r.at(i, col);
      if (f.is_zero()) continue;
      for (int j = col; j < r.cols(); ++j) r.at(i, j) -= f * r.at(prow, j);
    }
    pivots.push_back(col);
    ++prow;
  }
  return {std::move(r), prow, std::move(pivots)};
}

int rank_of(const Mat& m) { return rref(m).rank; }

std::optional<Mat> solve(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve: row count mismatch");
  RrefResult e = rref(hstack(a, b));
  // inconsistent iff a pivot lands in the b-part
  for (int i = 0; i < e.rank; ++i)
    if (e.pivots[i] >= a.cols()) return std::nullopt;
  Mat x(a.field(), a.cols(), b.cols());
  for (int i = 0; i < e.rank; ++i)
    for (int j = 0; j < b.cols(); ++j) x.at(e.pivots[i], j) = e.m.at(i, a.cols() + j);
  return x;
}

Mat kernel(const Mat& a) {
  RrefResult e = rref(a);
  std::vector<int> free_cols;
  {
    size_t pi = 0;
    for (int c = 0; c < a.cols(); ++c) {
      if (pi < e.pivots.size() && e.pivots[pi] == c)
        ++pi;
      else
        free_cols.push_back(c);
    }
  }
  Mat k(a.field(), a.cols(), static_cast<int>(free_cols.size()));
  for (size_t t = 0; t < free_cols.size(); ++t) {
    int fc = free_cols[t];
    k.at(fc, static_cast<int>(t)) = a.field().one();
    for (int i = 0; i < e.rank; ++i) k.at(e.pivots[i], static_cast<int>(t)) = -e.m.at(i, fc);
  }
  return k;
}

}  // namespace posetbocs
