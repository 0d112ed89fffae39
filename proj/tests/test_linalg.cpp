#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "posetbocs/subspace.hpp"

using namespace posetbocs;

namespace {

Mat from_ints(const Field& f, std::initializer_list<std::initializer_list<long>> rows) {
  Mat m(f, static_cast<int>(rows.size()), static_cast<int>(rows.begin()->size()));
  int r = 0;
  for (const auto& row : rows) {
    int c = 0;
    for (long v : row) m.at(r, c++) = f.from_int(v);
    ++r;
  }
  return m;
}

Mat random_mat(const Field& f, int r, int c, std::mt19937_64& rng) {
  Mat m(f, r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m.at(i, j) = f.from_int(static_cast<long>(rng() % 7) - 3);
  return m;
}

}  // namespace

TEST_CASE("scalar arithmetic over Q and F_p") {
  Field q = Field::rationals();
  CHECK(q.from_ratio(2, 4).str() == "1/2");
  CHECK((q.from_ratio(1, 3) + q.from_ratio(1, 6)).str() == "1/2");
  CHECK(q.from_ratio(-4, -6).str() == "2/3");  // positive denominator, lowest terms
  CHECK(q.from_ratio(1, -2).str() == "-1/2");

  Field f5 = Field::fp(5);
  CHECK((f5.from_int(3) * f5.from_int(4)).str() == "2");
  CHECK(f5.from_int(7) == f5.from_int(2));
  CHECK(f5.from_int(2).inv() == f5.from_int(3));
  CHECK((f5.from_int(1) / f5.from_int(4)).str() == "4");
  CHECK_THROWS_AS(Field::fp(6), std::invalid_argument);
  CHECK_THROWS_AS((void)(q.from_int(1) + f5.from_int(1)), std::invalid_argument);
}

TEST_CASE("rref identity and zero") {
  Field q = Field::rationals();
  auto e = rref(Mat::identity(q, 3));
  CHECK(e.rank == 3);
  CHECK(e.m == Mat::identity(q, 3));
  auto z = rref(Mat(q, 2, 2));
  CHECK(z.rank == 0);
  CHECK(z.m == Mat(q, 2, 2));
}

TEST_CASE("rref rank-one example") {
  // hand Gaussian elimination: [[1,2],[2,4]] -> [[1,2],[0,0]], rank 1
  Field q = Field::rationals();
  auto e = rref(from_ints(q, {{1, 2}, {2, 4}}));
  CHECK(e.rank == 1);
  CHECK(e.m == from_ints(q, {{1, 2}, {0, 0}}));
}

TEST_CASE("solve basics") {
  Field q = Field::rationals();
  Mat b = from_ints(q, {{3}, {5}});
  auto x = solve(Mat::identity(q, 2), b);
  REQUIRE(x.has_value());
  CHECK(*x == b);

  CHECK(!solve(Mat(q, 2, 2), b).has_value());  // zero * x = nonzero

  auto h = solve(from_ints(q, {{2}}), from_ints(q, {{1}}));
  REQUIRE(h.has_value());
  CHECK(h->at(0, 0) == q.from_ratio(1, 2));

  CHECK_THROWS_AS(solve(Mat(q, 2, 2), Mat(q, 3, 1)), std::invalid_argument);
}

TEST_CASE("solve returns exact solutions on random systems") {
  for (unsigned long p : {0ul, 2ul, 101ul}) {
    Field f = p ? Field::fp(p) : Field::rationals();
    std::mt19937_64 rng(42 + p);
    for (int iter = 0; iter < 40; ++iter) {
      Mat a = random_mat(f, 4, 3, rng);
      Mat x0 = random_mat(f, 3, 2, rng);
      Mat b = a * x0;
      auto x = solve(a, b);
      REQUIRE(x.has_value());
      CHECK(a * *x == b);
    }
  }
}

TEST_CASE("rref is idempotent on random matrices") {
  std::mt19937_64 rng(7);
  for (int iter = 0; iter < 40; ++iter) {
    Mat m = random_mat(Field::rationals(), 4, 5, rng);
    Mat r = rref(m).m;
    CHECK(rref(r).m == r);
  }
}

TEST_CASE("kernel spans the nullspace") {
  Field q = Field::rationals();
  Mat a = from_ints(q, {{1, 2, 3}, {2, 4, 6}});
  Mat k = kernel(a);
  CHECK(k.cols() == 2);
  CHECK((a * k).is_zero());
}

TEST_CASE("subspace membership and lattice operations") {
  Field q = Field::rationals();
  Subspace e1 = Subspace::span_rows(from_ints(q, {{1, 0}}));
  Subspace e2 = Subspace::span_rows(from_ints(q, {{0, 1}}));
  Subspace diag = Subspace::span_rows(from_ints(q, {{1, 1}}));

  CHECK(e1.contains(from_ints(q, {{1, 0}})));
  CHECK(!e1.contains(from_ints(q, {{1, 1}})));
  CHECK(e1.intersect(e2).dim() == 0);
  CHECK((e1 + diag).dim() == 2);  // <e1, e1+e2> is everything
  CHECK((e1 + diag) == (e1 + e2));
}

TEST_CASE("Grassmann dimension identity on random subspace pairs") {
  for (unsigned long p : {0ul, 3ul}) {
    Field f = p ? Field::fp(p) : Field::rationals();
    std::mt19937_64 rng(11 + p);
    for (int iter = 0; iter < 30; ++iter) {
      Subspace s1 = Subspace::span_rows(random_mat(f, 2, 5, rng));
      Subspace s2 = Subspace::span_rows(random_mat(f, 3, 5, rng));
      CHECK(s1.dim() + s2.dim() == (s1 + s2).dim() + s1.intersect(s2).dim());
    }
  }
}

TEST_CASE("canonical echelon bases make equality syntactic") {
  Field q = Field::rationals();
  Subspace a = Subspace::span_rows(from_ints(q, {{1, 1, 0}, {0, 0, 1}}));
  Subspace b = Subspace::span_rows(from_ints(q, {{1, 1, 1}, {0, 0, 2}, {1, 1, 3}}));
  CHECK(a == b);
  CHECK(a.basis() == b.basis());
}
