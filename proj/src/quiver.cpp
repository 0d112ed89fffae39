#include "posetbocs/quiver.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "posetbocs/sparse_echelon.hpp"

namespace posetbocs {

int QuiverPresentation::arrow_index(const std::string& nm) const {
  for (size_t i = 0; i < arrows.size(); ++i)
    if (arrows[i].name == nm) return static_cast<int>(i);
  throw std::invalid_argument("no arrow named " + nm);
}

std::string QuiverPresentation::path_str(const std::vector<int>& path, int src_vertex) const {
  if (path.empty()) return "e_" + vertices[src_vertex < 0 ? 0 : src_vertex];
  std::string out;
  for (auto it = path.rbegin(); it != path.rend(); ++it) {
    if (!out.empty()) out += "*";
    out += arrows[*it].name;
  }
  return out;
}

int PathIndex::index_of(int src, const std::vector<int>& arrows) const {
  for (int i : by_src_[src])
    if (paths[i].arrows == arrows) return i;
  throw std::logic_error("path not enumerated");
}

std::vector<int> PathIndex::paths_from(int v) const { return by_src_[v]; }
std::vector<int> PathIndex::paths_into(int v) const { return by_tgt_[v]; }

PathIndex enumerate_paths(const QuiverPresentation& q) {
  int nv = static_cast<int>(q.vertices.size());
  // acyclicity: Kahn's algorithm on vertices
  {
    std::vector<int> indeg(nv, 0);
    for (const auto& a : q.arrows) ++indeg[a.tgt];
    std::vector<int> stack;
    for (int v = 0; v < nv; ++v)
      if (!indeg[v]) stack.push_back(v);
    int seen = 0;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      ++seen;
      for (const auto& a : q.arrows)
        if (a.src == v && --indeg[a.tgt] == 0) stack.push_back(a.tgt);
    }
    if (seen != nv) throw std::invalid_argument("quiver has an oriented cycle");
  }
  PathIndex px;
  px.by_src_.assign(nv, {});
  px.by_tgt_.assign(nv, {});
  auto add = [&](PathIndex::Path p) {
    px.by_src_[p.src].push_back(px.count());
    px.by_tgt_[p.tgt].push_back(px.count());
    px.paths.push_back(std::move(p));
  };
  for (int v = 0; v < nv; ++v) add({v, v, {}});
  size_t frontier = 0;
  while (frontier < px.paths.size()) {
    if (px.paths.size() > 200000) throw std::runtime_error("path explosion");
    PathIndex::Path base = px.paths[frontier++];
    for (size_t ai = 0; ai < q.arrows.size(); ++ai) {
      if (q.arrows[ai].src != base.tgt) continue;
      PathIndex::Path ext = base;
      ext.arrows.push_back(static_cast<int>(ai));
      ext.tgt = q.arrows[ai].tgt;
      add(std::move(ext));
    }
  }
  return px;
}

namespace {

// Relation endpoints; validates all terms are parallel.
std::pair<int, int> relation_endpoints(const QuiverPresentation& q,
                                       const QuiverPresentation::Relation& r) {
  int s = -1, t = -1;
  for (const auto& term : r) {
    if (term.arrows.empty()) throw std::invalid_argument("relation with a trivial-path term");
    int ts = q.arrows[term.arrows.front()].src;
    int tt = q.arrows[term.arrows.back()].tgt;
    for (size_t k = 0; k + 1 < term.arrows.size(); ++k)
      if (q.arrows[term.arrows[k]].tgt != q.arrows[term.arrows[k + 1]].src)
        throw std::invalid_argument("non-composable path in relation");
    if (s < 0) s = ts, t = tt;
    if (ts != s || tt != t) throw std::invalid_argument("relation terms are not parallel");
  }
  return {s, t};
}

}  // namespace

int path_algebra_dim(const QuiverPresentation& q) {
  PathIndex px = enumerate_paths(q);
  SparseEchelon ideal;
  for (const auto& rel : q.relations) {
    auto [s, t] = relation_endpoints(q, rel);
    for (int w : px.paths_into(s)) {
      for (int u : px.paths_from(t)) {
        SparseVec row;
        for (const auto& term : rel) {
          std::vector<int> composite = px.paths[w].arrows;
          composite.insert(composite.end(), term.arrows.begin(), term.arrows.end());
          composite.insert(composite.end(), px.paths[u].arrows.begin(), px.paths[u].arrows.end());
          row.emplace_back(px.index_of(px.paths[w].src, composite), term.coeff);
        }
        sparse_normalize(row);
        if (!row.empty()) ideal.add_row(std::move(row));
      }
    }
  }
  return px.count() - ideal.rank();
}

namespace {

std::string lab(int v) { return std::to_string(v); }

std::string arrow_name(const std::string& prefix, int j, int i) {
  if (j < 10 && i < 10) return prefix + std::to_string(j) + std::to_string(i);
  return prefix + std::to_string(j) + "_" + std::to_string(i);
}

// all parallel-path differences among paths built from the given arrow subset
void add_commutativity_relations(QuiverPresentation& q, const PathIndex& px) {
  std::map<std::pair<int, int>, std::vector<int>> parallel;
  for (int i = 0; i < px.count(); ++i) {
    if (px.paths[i].arrows.empty()) continue;
    parallel[{px.paths[i].src, px.paths[i].tgt}].push_back(i);
  }
  for (const auto& [st, group] : parallel) {
    (void)st;
    if (group.size() < 2) continue;
    for (size_t l = 1; l < group.size(); ++l) {
      if (px.paths[group[0]].arrows.size() < 2 || px.paths[group[l]].arrows.size() < 2)
        throw ConsistencyError("parallel path of length 1 (not an admissible relation)");
      QuiverPresentation::Relation r;
      r.push_back({q.field.one(), px.paths[group[0]].arrows});
      r.push_back({-q.field.one(), px.paths[group[l]].arrows});
      q.relations.push_back(std::move(r));
    }
  }
}

}  // namespace

QuiverPresentation hasse_presentation(const Field& f, const Poset& p) {
  QuiverPresentation q;
  q.field = f;
  q.name = "hasse";
  for (int v = 1; v <= p.size(); ++v) q.vertices.push_back(lab(v));
  for (auto [i, j] : p.cover_pairs())
    q.arrows.push_back({arrow_name("nu", j, i), i - 1, j - 1});
  add_commutativity_relations(q, enumerate_paths(q));
  return q;
}

QuiverPresentation right_quiver(const Field& f, const Poset& p) {
  QuiverPresentation q;
  q.field = f;
  q.name = "right";
  for (int v = 1; v <= p.size(); ++v) q.vertices.push_back(lab(v));
  q.vertices.push_back("*");
  int star = p.size();
  for (auto [i, j] : p.cover_pairs())
    q.arrows.push_back({arrow_name("nu", j, i), i - 1, j - 1});
  for (int j : p.maximals()) q.arrows.push_back({"a" + std::to_string(j), j - 1, star});
  add_commutativity_relations(q, enumerate_paths(q));
  return q;
}

namespace {

// Shared machinery for the row-balanced and left quivers.
struct LeftQuiverBuilder {
  const Poset& p;
  const MinimalMarking& m;
  const OrbitData& orbit;
  QuiverPresentation& q;
  std::map<int, int> vx;                      // poset label (0 for the extra vertex) -> vertex index
  std::map<std::pair<int, int>, int> nu;      // cover (i, j) in P' -> arrow
  std::map<std::pair<int, int>, int> barrow;  // (j, rep i) -> arrow 0 -> j

  // fixed Hasse(P') path from j up to k (arrow list, traversal order); j = k gives {}
  std::vector<int> nu_path(int j, int k) const {
    std::vector<int> out;
    int cur = j;
    while (cur != k) {
      int next = -1;
      for (int c = cur + 1; c <= k; ++c)
        if (!p.is_minimal(c) && p.covers(cur, c) && p.leq(c, k)) {
          next = c;
          break;
        }
      if (next < 0) throw std::logic_error("no cover chain inside P'");
      out.push_back(nu.at({cur, next}));
      cur = next;
    }
    return out;
  }

  void add_p_prime_arrows() {
    for (auto [i, j] : p.cover_pairs())
      if (!p.is_minimal(i))
        nu[{i, j}] = add_arrow(arrow_name("nu", j, i), vx.at(i), vx.at(j));
  }

  void add_b_arrows() {
    for (const auto& pv : orbit.vertices)
      for (int i : pv.reps)
        barrow[{pv.j, i}] = add_arrow(arrow_name("b", pv.j, i), vx.at(0), vx.at(pv.j));
  }

  int add_arrow(const std::string& name, int s, int t) {
    q.arrows.push_back({name, s, t});
    return static_cast<int>(q.arrows.size()) - 1;
  }

  // commutativity relations of Hasse(P'): parallel nu-paths
  void add_r_pprime() {
    for (int j : p.derived())
      for (int k : p.derived()) {
        if (!p.less(j, k)) continue;
        // enumerate all cover chains j -> ... -> k inside P'
        std::vector<std::vector<int>> chains;
        std::vector<int> cur;
        std::function<void(int)> rec = [&](int at) {
          if (at == k) {
            chains.push_back(cur);
            return;
          }
          for (int c = at + 1; c <= k; ++c)
            if (!p.is_minimal(c) && p.covers(at, c) && p.leq(c, k)) {
              cur.push_back(nu.at({at, c}));
              rec(c);
              cur.pop_back();
            }
        };
        rec(j);
        for (size_t l = 1; l < chains.size(); ++l)
          q.relations.push_back({{q.field.one(), chains[0]}, {-q.field.one(), chains[l]}});
      }
  }

  // orbit-cycle relations among the composites (nu-path j -> k) . b_{ji}:
  // a fundamental cycle basis of the graph on min(P,k) with one edge
  // m(j) -> i per generator, for every k in P'
  void add_r_cycles() {
    for (int k : p.derived()) {
      struct Edge {
        int tail, head;
        std::vector<int> path;  // full 0 -> k path, traversal order
      };
      std::vector<Edge> edges;
      for (const auto& pv : orbit.vertices) {
        int j = pv.j;
        if (!p.less(j, k)) continue;
        for (int i : pv.reps) {
          std::vector<int> full{barrow.at({j, i})};
          auto up = nu_path(j, k);
          full.insert(full.end(), up.begin(), up.end());
          edges.push_back({m(j), i, std::move(full)});
        }
      }
      if (edges.empty()) continue;
      // spanning forest; fundamental cycles become relations
      // potential: signed generator list realizing (vertex - component root)
      std::map<int, std::vector<std::pair<int, bool>>> potential;  // (edge idx, reversed?)
      auto pot = [&](int v) {
        return potential.count(v) ? potential[v] : std::vector<std::pair<int, bool>>{};
      };
      std::vector<bool> is_tree(edges.size(), false);
      {
        std::map<int, int> par2;
        std::function<int(int)> find2 = [&](int x) {
          if (!par2.count(x)) par2[x] = x;
          return par2[x] == x ? x : par2[x] = find2(par2[x]);
        };
        std::map<int, std::vector<std::pair<int, bool>>> adj;  // vertex -> (edge, forward?)
        for (size_t e = 0; e < edges.size(); ++e) {
          if (find2(edges[e].tail) != find2(edges[e].head)) {
            par2[find2(edges[e].tail)] = find2(edges[e].head);
            is_tree[e] = true;
            adj[edges[e].tail].emplace_back(static_cast<int>(e), true);
            adj[edges[e].head].emplace_back(static_cast<int>(e), false);
          }
        }
        std::map<int, bool> visited;
        for (const auto& e : edges)
          for (int v : {e.tail, e.head})
            if (!visited.count(v)) {
              // BFS from v as root with zero potential
              std::vector<int> stack{v};
              visited[v] = true;
              potential[v] = {};
              while (!stack.empty()) {
                int x = stack.back();
                stack.pop_back();
                for (auto [ei, fwd] : adj[x]) {
                  int y = fwd ? edges[ei].head : edges[ei].tail;
                  if (visited.count(y)) continue;
                  visited[y] = true;
                  auto ppath = potential[x];
                  ppath.emplace_back(ei, !fwd);
                  potential[y] = ppath;
                  stack.push_back(y);
                }
              }
            }
      }
      for (size_t e = 0; e < edges.size(); ++e) {
        if (is_tree[e]) continue;
        // relation: g_e + pot(tail) - pot(head) = 0
        QuiverPresentation::Relation rel;
        rel.push_back({q.field.one(), edges[e].path});
        for (auto [ei, rev] : pot(edges[e].tail))
          rel.push_back({rev ? -q.field.one() : q.field.one(), edges[ei].path});
        for (auto [ei, rev] : pot(edges[e].head))
          rel.push_back({rev ? q.field.one() : -q.field.one(), edges[ei].path});
        q.relations.push_back(std::move(rel));
      }
    }
  }
};

}  // namespace

QuiverPresentation row_balanced_presentation(const Field& f, const Poset& p,
                                             const MinimalMarking& m, const OrbitData& orbit) {
  QuiverPresentation q;
  q.field = f;
  q.name = "row_balanced";
  LeftQuiverBuilder lb{p, m, orbit, q, {}, {}, {}};
  for (int j : p.derived()) {
    lb.vx[j] = static_cast<int>(q.vertices.size());
    q.vertices.push_back(lab(j));
  }
  lb.vx[0] = static_cast<int>(q.vertices.size());
  q.vertices.push_back("0");
  lb.add_p_prime_arrows();
  lb.add_b_arrows();
  lb.add_r_pprime();
  lb.add_r_cycles();
  return q;
}

QuiverPresentation left_quiver(const Field& f, const Poset& p, const MinimalMarking& m,
                               const OrbitData& orbit) {
  QuiverPresentation q;
  q.field = f;
  q.name = "left";
  LeftQuiverBuilder lb{p, m, orbit, q, {}, {}, {}};
  for (int v = 1; v <= p.size(); ++v) {
    lb.vx[v] = static_cast<int>(q.vertices.size());
    q.vertices.push_back(lab(v));
  }
  lb.vx[0] = static_cast<int>(q.vertices.size());
  q.vertices.push_back("0");

  lb.add_p_prime_arrows();
  std::map<int, int> unique_nu;  // j -> arrow, when j has a unique strict lower bound
  for (int j : p.derived()) {
    auto low = p.lower(j);
    if (low.size() == 1)
      unique_nu[j] = lb.add_arrow(arrow_name("nu", j, low[0]), lb.vx.at(low[0]), lb.vx.at(j));
  }
  std::map<int, int> aarrow;
  for (int i : p.minimals())
    aarrow[i] = lb.add_arrow("a" + std::to_string(i), lb.vx.at(i), lb.vx.at(0));
  lb.add_b_arrows();

  lb.add_r_pprime();
  lb.add_r_cycles();

  // R^0: composites through the 0 vertex that must vanish or agree
  for (const auto& pv : orbit.vertices) {
    int j = pv.j;
    for (size_t r1 = 0; r1 < pv.reps.size(); ++r1)
      for (size_t r2 = r1 + 1; r2 < pv.reps.size(); ++r2) {
        // (b_{j,i} - b_{j,i'}) a_{m(j)}
        q.relations.push_back(
            {{f.one(), {aarrow.at(m(j)), lb.barrow.at({j, pv.reps[r1]})}},
             {-f.one(), {aarrow.at(m(j)), lb.barrow.at({j, pv.reps[r2]})}}});
      }
    for (int i : pv.reps)
      for (int ip : p.minimals()) {
        if (ip == m(j) || ip == i) continue;
        q.relations.push_back({{f.one(), {aarrow.at(ip), lb.barrow.at({j, i})}}});
      }
  }

  // R_paths: all ways from a minimal i up to k agree
  for (int k : p.derived()) {
    for (int i : p.min_below(k)) {
      std::vector<QuiverPresentation::Term> paths;
      for (int j : p.derived()) {
        if (!(p.less(i, j) && p.leq(j, k))) continue;
        auto low = p.lower(j);
        std::vector<int> pji;  // traversal order; sign in coeff
        Scalar sign = f.one();
        if (low.size() == 1 && low[0] == i) {
          pji = {unique_nu.at(j)};
        } else if (i == m(j) && !orbit.at(j).reps.empty()) {
          pji = {aarrow.at(i), lb.barrow.at({j, orbit.at(j).reps.front()})};
          sign = -f.one();
        } else if (std::find(orbit.at(j).reps.begin(), orbit.at(j).reps.end(), i) !=
                   orbit.at(j).reps.end()) {
          pji = {aarrow.at(i), lb.barrow.at({j, i})};
        } else {
          continue;
        }
        auto up = lb.nu_path(j, k);
        pji.insert(pji.end(), up.begin(), up.end());
        paths.push_back({sign, std::move(pji)});
      }
      for (size_t l = 1; l < paths.size(); ++l)
        q.relations.push_back({paths[0], {-paths[l].coeff, paths[l].arrows}});
    }
  }
  return q;
}

std::string to_dot(const QuiverPresentation& q) {
  std::ostringstream os;
  os << "digraph " << (q.name.empty() ? "quiver" : q.name) << " {\n";
  for (const auto& v : q.vertices) os << "  \"" << v << "\";\n";
  for (const auto& a : q.arrows)
    os << "  \"" << q.vertices[a.src] << "\" -> \"" << q.vertices[a.tgt] << "\" [label=\""
       << a.name << "\"];\n";
  for (const auto& rel : q.relations) {
    os << "  // relation:";
    for (const auto& term : rel) {
      std::string c = term.coeff.str();
      if (c == "1")
        os << " +";
      else if (c == "-1")
        os << " -";
      else
        os << " +(" << c << ")";
      os << q.path_str(term.arrows);
    }
    os << "\n";
  }
  os << "}\n";
  return os.str();
}

bool presentation_isomorphic(const QuiverPresentation& q, const std::vector<Mat>& vertex_images,
                             const std::vector<Mat>& arrow_images, const MatrixAlgebra& target,
                             bool strict) {
  auto fail = [&](const std::string& why) -> bool {
    if (strict) throw ConsistencyError(q.name + " presentation: " + why);
    return false;
  };
  for (size_t a = 0; a < q.arrows.size(); ++a) {
    const auto& img = arrow_images[a];
    if (vertex_images[q.arrows[a].tgt] * img * vertex_images[q.arrows[a].src] != img)
      return fail("arrow image not homogeneous for its endpoints");
  }
  PathIndex px = enumerate_paths(q);
  auto path_image = [&](const std::vector<int>& arrows, int src) {
    Mat m = vertex_images[src];
    for (int ai : arrows) m = arrow_images[ai] * m;
    return m;
  };
  Mat rows(q.field, 0, target.ambient() * target.ambient());
  for (const auto& pth : px.paths) {
    Mat img = path_image(pth.arrows, pth.src);
    if (!target.contains(img)) return fail("path image escapes the target algebra");
    rows = vstack(rows, img.vectorize());
  }
  if (Subspace::span_rows(rows).dim() != target.dim()) return fail("path images do not span");
  for (const auto& rel : q.relations) {
    auto [s, t] = relation_endpoints(q, rel);
    (void)t;
    Mat sum(q.field, target.ambient(), target.ambient());
    for (const auto& term : rel) sum = sum + path_image(term.arrows, s) * term.coeff;
    if (!sum.is_zero()) return fail("relation does not vanish in the target");
  }
  if (path_algebra_dim(q) != target.dim()) return fail("quotient dimension mismatch");
  return true;
}

}  // namespace posetbocs
