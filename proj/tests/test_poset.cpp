#include <random>
#include <set>

#include "doctest.h"
#include "posetbocs/poset.hpp"

using namespace posetbocs;

namespace {

// Independent closure oracle: DFS reachability on the declared relations.
int closure_card_oracle(int n, const std::vector<std::pair<int, int>>& rels) {
  std::vector<std::set<int>> adj(n + 1);
  for (auto [a, b] : rels) adj[a].insert(b);
  int count = 0;
  for (int s = 1; s <= n; ++s) {
    std::set<int> seen;
    std::vector<int> stack{s};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : adj[v])
        if (seen.insert(w).second) stack.push_back(w);
    }
    seen.erase(s);
    count += static_cast<int>(seen.size());
  }
  return count;
}

}  // namespace

TEST_CASE("parse antichain") {
  auto pp = parse_poset("n=2\n");
  CHECK(pp.poset.size() == 2);
  CHECK(pp.poset.card_strict() == 0);
  CHECK(!pp.relabeled);
}

TEST_CASE("parse the two-minimals-one-top poset") {
  auto pp = parse_poset("n=3; 1<3; 2<3");
  const Poset& p = pp.poset;
  CHECK(p.less(1, 3));
  CHECK(p.less(2, 3));
  CHECK(!p.less(1, 2));
  CHECK(p.minimals() == std::vector<int>{1, 2});
  CHECK(p.maximals() == std::vector<int>{3});
}

TEST_CASE("parse with closure") {
  // covers 1<3, 2<3, 3<4, 3<5; closure adds 1<4, 2<4, 1<5, 2<5: Card = 8
  std::vector<std::pair<int, int>> rels{{1, 3}, {2, 3}, {3, 4}, {3, 5}};
  auto pp = parse_poset("n=5; 1<3; 2<3; 3<4; 3<5");
  CHECK(pp.poset.card_strict() == 8);
  CHECK(pp.poset.card_strict() == closure_card_oracle(5, rels));
  CHECK(pp.poset.cover_pairs() ==
        std::vector<std::pair<int, int>>{{1, 3}, {2, 3}, {3, 4}, {3, 5}});
}

TEST_CASE("parse JSON form") {
  auto pp = parse_poset(R"({"n":3,"lt":[[1,3],[2,3]]})");
  CHECK(pp.poset.size() == 3);
  CHECK(pp.poset.card_strict() == 2);
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_poset("n=2; 1<5"), ParseError);
  CHECK_THROWS_AS(parse_poset("n=2; 1<1"), ParseError);
  CHECK_THROWS_AS(parse_poset("1<2"), ParseError);          // missing n
  CHECK_THROWS_AS(parse_poset("n=3; 1<2; 2<3; 3<1"), ParseError);  // cycle
}

TEST_CASE("order-incompatible labels are relabeled by a topological sort") {
  auto pp = parse_poset("n=2; 2<1");
  CHECK(pp.relabeled);
  CHECK(pp.relabel == std::vector<int>{2, 1});
  CHECK(pp.poset.less(1, 2));
}

TEST_CASE("default marking") {
  auto pb = parse_poset("n=3; 1<3; 2<3").poset;
  CHECK(default_marking(pb)(3) == 1);

  auto pc = parse_poset("n=4; 1<3; 2<3; 2<4").poset;
  auto m = default_marking(pc);
  CHECK(m(3) == 1);
  CHECK(m(4) == 2);  // 1 is not below 4, so the marking is forced to 2

  auto anti = parse_poset("n=3").poset;
  auto ma = default_marking(anti);
  for (int j = 1; j <= 3; ++j) CHECK(ma(j) == j);  // identity on minimals
}

TEST_CASE("marking validation") {
  auto pc = parse_poset("n=4; 1<3; 2<3; 2<4").poset;
  CHECK_THROWS_AS(make_marking(pc, {1, 2, 1, 1}), std::invalid_argument);  // 1 not below 4
  auto m = parse_marking(pc, "3=2\n");
  CHECK(m(3) == 2);
  CHECK(m(4) == 2);
}

TEST_CASE("orbit data on the crown") {
  auto pd = parse_poset("n=4; 1<3; 2<3; 1<4; 2<4").poset;
  auto od = orbit_data(pd, default_marking(pd));
  const auto& v3 = od.at(3);
  CHECK(v3.classes == std::vector<std::vector<int>>{{1}, {2}});
  CHECK(v3.orb == 2);
  CHECK(v3.reps == std::vector<int>{2});
  const auto& v4 = od.at(4);
  CHECK(v4.orb == 2);
  CHECK(v4.reps == std::vector<int>{2});
}

TEST_CASE("orbit data merges classes through a common upper bound") {
  auto pe = parse_poset("n=5; 1<3; 2<3; 3<4; 3<5").poset;
  auto od = orbit_data(pe, default_marking(pe));
  CHECK(od.at(3).orb == 2);
  // at 4: minimals {1,2} both lie below 3 < 4, so one class and no reps
  CHECK(od.at(4).orb == 1);
  CHECK(od.at(4).reps.empty());
  CHECK(od.at(5).orb == 1);
}

TEST_CASE("orbit data on a chain") {
  auto c2 = parse_poset("n=2; 1<2").poset;
  auto od = orbit_data(c2, default_marking(c2));
  CHECK(od.at(2).orb == 1);
  CHECK(od.at(2).reps.empty());
}

TEST_CASE("closure is idempotent and Hasse arrows regenerate the order") {
  std::mt19937_64 rng(2024);
  for (int iter = 0; iter < 40; ++iter) {
    Poset p = random_poset(6, rng);
    Poset again = Poset::from_relations(6, p.strict_pairs());
    CHECK(p == again);
    Poset from_covers = Poset::from_relations(6, p.cover_pairs());
    CHECK(p == from_covers);
  }
}

TEST_CASE("orbit classes partition min(P,j) with exactly one class containing m(j)") {
  std::mt19937_64 rng(99);
  for (int iter = 0; iter < 40; ++iter) {
    Poset p = random_poset(6, rng);
    auto m = default_marking(p);
    auto od = orbit_data(p, m);
    for (const auto& pv : od.vertices) {
      std::vector<int> all;
      for (const auto& c : pv.classes) all.insert(all.end(), c.begin(), c.end());
      std::sort(all.begin(), all.end());
      CHECK(all == p.min_below(pv.j));
      int marked = 0;
      for (const auto& c : pv.classes)
        if (std::find(c.begin(), c.end(), m(pv.j)) != c.end()) ++marked;
      CHECK(marked == 1);
      CHECK(static_cast<int>(pv.reps.size()) == pv.orb - 1);
    }
  }
}

TEST_CASE("derived poset constructions") {
  auto pb = parse_poset("n=3; 1<3; 2<3").poset;
  Poset star = pb.suspension();
  CHECK(star.size() == 4);
  CHECK(star.card_strict() == 2 + 3);
  Poset op = pb.opposite();
  CHECK(op.card_strict() == 2);
  CHECK(op.minimals() == std::vector<int>{1});

  CHECK(!pb.every_component_has_minimum());
  auto diamond = parse_poset("n=4; 1<2; 1<3; 2<4; 3<4").poset;
  CHECK(diamond.every_component_has_minimum());
  Poset ext = pb.min_zero_extension();
  CHECK(ext.size() == 4);
  CHECK(ext.less(1, 4));
  CHECK(ext.less(2, 4));
  CHECK(!ext.less(3, 4));
}
