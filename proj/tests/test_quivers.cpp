#include <random>

#include "doctest.h"
#include "posetbocs/incidence.hpp"
#include "posetbocs/quiver.hpp"

using namespace posetbocs;

namespace {
const Field Q = Field::rationals();

Poset pb() { return parse_poset("n=3; 1<3; 2<3").poset; }
Poset pc() { return parse_poset("n=4; 1<3; 2<3; 2<4").poset; }
Poset pd() { return parse_poset("n=4; 1<3; 2<3; 1<4; 2<4").poset; }
Poset pe() { return parse_poset("n=5; 1<3; 2<3; 3<4; 3<5").poset; }

std::vector<std::string> arrow_names(const QuiverPresentation& q) {
  std::vector<std::string> out;
  for (const auto& a : q.arrows) out.push_back(a.name);
  std::sort(out.begin(), out.end());
  return out;
}

QuiverPresentation lq(const Poset& p) {
  auto m = default_marking(p);
  return left_quiver(Q, p, m, orbit_data(p, m));
}

QuiverPresentation rbq(const Poset& p) {
  auto m = default_marking(p);
  return row_balanced_presentation(Q, p, m, orbit_data(p, m));
}

}  // namespace

TEST_CASE("path algebra dimension basics") {
  QuiverPresentation one;
  one.field = Q;
  one.vertices = {"1"};
  CHECK(path_algebra_dim(one) == 1);

  // commutative square: 4 trivial + 4 arrows + 1 identified length-2 class
  QuiverPresentation sq;
  sq.field = Q;
  sq.vertices = {"1", "2", "3", "4"};
  sq.arrows = {{"a", 0, 1}, {"b", 0, 2}, {"c", 1, 3}, {"d", 2, 3}};
  sq.relations = {{{Q.one(), {0, 2}}, {-Q.one(), {1, 3}}}};
  CHECK(path_algebra_dim(sq) == 9);
  // without the relation the two squares stay distinct
  sq.relations.clear();
  CHECK(path_algebra_dim(sq) == 10);
}

TEST_CASE("Hasse presentation matches the incidence algebra") {
  CHECK(path_algebra_dim(hasse_presentation(Q, pb())) == 5);
  CHECK(hasse_presentation(Q, pb()).relations.empty());

  // diamond 1<2, 1<3, 2<4, 3<4: one commutativity relation, dim 9
  Poset diamond = parse_poset("n=4; 1<2; 1<3; 2<4; 3<4").poset;
  auto hq = hasse_presentation(Q, diamond);
  CHECK(hq.relations.size() == 1);
  CHECK(path_algebra_dim(hq) == 9);
  CHECK(incidence_algebra(Q, diamond).dim() == 9);

  Poset anti = parse_poset("n=4").poset;
  CHECK(path_algebra_dim(hasse_presentation(Q, anti)) == 4);
}

TEST_CASE("Hasse presentation structure-constant isomorphism") {
  std::mt19937_64 rng(808);
  for (int iter = 0; iter < 12; ++iter) {
    Poset p = random_poset(5, rng);
    auto q = hasse_presentation(Q, p);
    auto kp = incidence_algebra(Q, p);
    std::vector<Mat> vimg, aimg;
    for (int v = 1; v <= p.size(); ++v) vimg.push_back(Mat::unit(Q, p.size(), p.size(), v - 1, v - 1));
    for (const auto& a : q.arrows)
      aimg.push_back(Mat::unit(Q, p.size(), p.size(), a.tgt, a.src));
    CHECK(presentation_isomorphic(q, vimg, aimg, kp, true));
  }
}

TEST_CASE("right quiver arrows and dimensions on the gallery") {
  auto qb = right_quiver(Q, pb());
  CHECK(arrow_names(qb) == std::vector<std::string>{"a3", "nu31", "nu32"});
  CHECK(path_algebra_dim(qb) == 9);
  CHECK(qb.vertices.size() == 4);

  auto qc = right_quiver(Q, pc());
  CHECK(arrow_names(qc) == std::vector<std::string>{"a3", "a4", "nu31", "nu32", "nu42"});
  CHECK(qc.relations.size() == 1);  // a3 nu32 = a4 nu42
  CHECK(path_algebra_dim(qc) == 12);

  auto qd = right_quiver(Q, pd());
  CHECK(arrow_names(qd) ==
        std::vector<std::string>{"a3", "a4", "nu31", "nu32", "nu41", "nu42"});
  CHECK(path_algebra_dim(qd) == 13);  // dim K(P*) = 5 + (4 + 4)

  auto qe = right_quiver(Q, pe());
  CHECK(arrow_names(qe) ==
        std::vector<std::string>{"a4", "a5", "nu31", "nu32", "nu43", "nu53"});
  CHECK(path_algebra_dim(qe) == 19);

  auto qa = right_quiver(Q, parse_poset("n=2").poset);
  CHECK(arrow_names(qa) == std::vector<std::string>{"a1", "a2"});
  CHECK(path_algebra_dim(qa) == 5);
}

TEST_CASE("right quiver presents the incidence algebra of the suspension") {
  std::mt19937_64 rng(4096);
  for (int iter = 0; iter < 12; ++iter) {
    Poset p = random_poset(5, rng);
    Poset star = p.suspension();
    auto q = right_quiver(Q, p);
    auto ks = incidence_algebra(Q, star);
    int N = star.size();
    std::vector<Mat> vimg, aimg;
    for (int v = 1; v <= N; ++v) vimg.push_back(Mat::unit(Q, N, N, v - 1, v - 1));
    for (const auto& a : q.arrows) aimg.push_back(Mat::unit(Q, N, N, a.tgt, a.src));
    CHECK(presentation_isomorphic(q, vimg, aimg, ks, true));
    CHECK(path_algebra_dim(q) == 1 + 2 * p.size() + p.card_strict());
  }
}

TEST_CASE("row-balanced presentation dimensions") {
  CHECK(path_algebra_dim(rbq(pb())) == 3);
  auto qe = rbq(pe());
  CHECK(arrow_names(qe) == std::vector<std::string>{"b32", "nu43", "nu53"});
  CHECK(path_algebra_dim(qe) == 9);
  auto c2 = parse_poset("n=2; 1<2").poset;
  auto qc2 = rbq(c2);
  CHECK(qc2.arrows.empty());  // Orb(2) = 1
  CHECK(path_algebra_dim(qc2) == 2);
}

TEST_CASE("row-balanced presentation is isomorphic to K1P") {
  std::mt19937_64 rng(31337);
  for (int iter = 0; iter < 15; ++iter) {
    Poset p = random_poset(6, rng);
    auto m = default_marking(p);
    auto orbit = orbit_data(p, m);
    auto q = row_balanced_presentation(Q, p, m, orbit);
    RowBalanced rb = row_balanced(Q, p, m);
    CHECK(path_algebra_dim(q) == 1 + p.card_strict());

    // vertex/arrow images: eps idempotents; homogeneous generators
    int n = p.size();
    std::vector<Mat> vimg;
    auto derived = p.derived();
    for (int j : derived) {
      (void)j;
      vimg.push_back(Mat(Q, n, n));
    }
    vimg.push_back(rb.eps0);
    for (size_t t = 0; t < derived.size(); ++t) vimg[t] = rb.eps[t];
    std::vector<Mat> aimg;
    for (const auto& a : q.arrows) {
      if (a.name[0] == 'n') {
        int j = std::stoi(q.vertices[a.tgt]);
        int i = std::stoi(q.vertices[a.src]);
        aimg.push_back(Mat::unit(Q, n, n, j - 1, i - 1) - Mat::unit(Q, n, n, j - 1, m(i) - 1));
      } else {  // b arrow 0 -> j labeled with its representative
        int j = std::stoi(q.vertices[a.tgt]);
        int i = std::stoi(a.name.substr(1 + std::to_string(j).size()));
        aimg.push_back(rb.b(j, i));
      }
    }
    CHECK(presentation_isomorphic(q, vimg, aimg, rb.algebra, true));
  }
}

TEST_CASE("left quiver arrow sets on the gallery") {
  CHECK(arrow_names(lq(pb())) == std::vector<std::string>{"a1", "a2", "b32"});
  CHECK(arrow_names(lq(pc())) == std::vector<std::string>{"a1", "a2", "b32", "nu42"});
  CHECK(arrow_names(lq(pd())) == std::vector<std::string>{"a1", "a2", "b32", "b42"});
  CHECK(arrow_names(lq(pe())) == std::vector<std::string>{"a1", "a2", "b32", "nu43", "nu53"});
  CHECK(path_algebra_dim(lq(pb())) == 9);
  CHECK(path_algebra_dim(lq(pc())) == 11);
  CHECK(path_algebra_dim(lq(pd())) == 13);
  CHECK(path_algebra_dim(lq(pe())) == 19);
}

TEST_CASE("left quiver of an antichain") {
  auto q = lq(parse_poset("n=3").poset);
  CHECK(arrow_names(q) == std::vector<std::string>{"a1", "a2", "a3"});
  CHECK(path_algebra_dim(q) == 7);  // 2n + 1
}

TEST_CASE("orbit-cycle relations beyond the quadrilateral pattern") {
  // three pairwise-overlapping double covers force a triangle relation at the top
  Poset p = parse_poset("n=7; 1<4; 2<4; 2<5; 3<5; 1<6; 3<6; 4<7; 5<7; 6<7").poset;
  auto m = default_marking(p);
  auto orbit = orbit_data(p, m);
  auto q = row_balanced_presentation(Q, p, m, orbit);
  CHECK(path_algebra_dim(q) == 1 + p.card_strict());
  bool has_triangle = false;
  for (const auto& rel : q.relations) has_triangle |= rel.size() == 3;
  CHECK(has_triangle);
}

TEST_CASE("DOT output is deterministic and complete") {
  auto q = lq(pd());
  std::string dot = to_dot(q);
  CHECK(dot == to_dot(lq(pd())));
  CHECK(dot.find("\"0\" -> \"3\" [label=\"b32\"]") != std::string::npos);
  CHECK(dot.find("\"1\" -> \"0\" [label=\"a1\"]") != std::string::npos);
  // node and edge counts: 5 nodes, 4 edges
  size_t edges = 0, pos = 0;
  while ((pos = dot.find("->", pos)) != std::string::npos) ++edges, pos += 2;
  CHECK(edges == 4);
}

TEST_CASE("cyclic quivers are rejected") {
  QuiverPresentation q;
  q.field = Q;
  q.vertices = {"1", "2"};
  q.arrows = {{"f", 0, 1}, {"g", 1, 0}};
  CHECK_THROWS_AS(path_algebra_dim(q), std::invalid_argument);
}
