#include "posetbocs/poset.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace posetbocs {

Poset Poset::from_relations(int n, const std::vector<std::pair<int, int>>& less_pairs) {
  if (n < 1) throw ParseError("poset needs at least one element");
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) leq[i][i] = true;
  for (auto [a, b] : less_pairs) {
    if (a < 1 || a > n || b < 1 || b > n) throw ParseError("relation label out of range");
    if (a == b) throw ParseError("irreflexive relation i<i");
    leq[a - 1][b - 1] = true;
  }
  // boolean transitive closure
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (leq[i][k])
        for (int j = 0; j < n; ++j)
          if (leq[k][j]) leq[i][j] = true;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && leq[i][j] && leq[j][i]) throw ParseError("cycle detected (antisymmetry violated)");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j)
      if (leq[i][j]) throw ParseError("labeling violates the order convention");
  Poset p;
  p.n_ = n;
  p.leq_ = std::move(leq);
  return p;
}

bool Poset::covers(int i, int j) const {
  if (!less(i, j)) return false;
  for (int k = i + 1; k < j; ++k)
    if (less(i, k) && less(k, j)) return false;
  return true;
}

std::vector<int> Poset::minimals() const {
  std::vector<int> out;
  for (int j = 1; j <= n_; ++j) {
    bool min = true;
    for (int i = 1; i < j && min; ++i) min = !less(i, j);
    if (min) out.push_back(j);
  }
  return out;
}

std::vector<int> Poset::maximals() const {
  std::vector<int> out;
  for (int i = 1; i <= n_; ++i) {
    bool max = true;
    for (int j = i + 1; j <= n_ && max; ++j) max = !less(i, j);
    if (max) out.push_back(i);
  }
  return out;
}

bool Poset::is_minimal(int i) const {
  for (int h = 1; h < i; ++h)
    if (less(h, i)) return false;
  return true;
}

std::vector<int> Poset::lower(int j) const {
  std::vector<int> out;
  for (int i = 1; i < j; ++i)
    if (less(i, j)) out.push_back(i);
  return out;
}

std::vector<int> Poset::min_below(int j) const {
  std::vector<int> out;
  for (int i = 1; i <= j; ++i)
    if (leq(i, j) && is_minimal(i)) out.push_back(i);
  return out;
}

std::vector<std::pair<int, int>> Poset::strict_pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int j = 1; j <= n_; ++j)
    for (int i = 1; i < j; ++i)
      if (less(i, j)) out.emplace_back(i, j);
  return out;
}

std::vector<std::pair<int, int>> Poset::cover_pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int j = 1; j <= n_; ++j)
    for (int i = 1; i < j; ++i)
      if (covers(i, j)) out.emplace_back(i, j);
  return out;
}

std::vector<int> Poset::derived() const {
  std::vector<int> out;
  for (int j = 1; j <= n_; ++j)
    if (!is_minimal(j)) out.push_back(j);
  return out;
}

Poset Poset::opposite() const {
  // reverse order, then relabel k -> n+1-k to restore the convention
  std::vector<std::pair<int, int>> rel;
  for (auto [i, j] : strict_pairs()) rel.emplace_back(n_ + 1 - j, n_ + 1 - i);
  return from_relations(n_, rel);
}

Poset Poset::suspension() const {
  std::vector<std::pair<int, int>> rel = strict_pairs();
  for (int i = 1; i <= n_; ++i) rel.emplace_back(i, n_ + 1);
  return from_relations(n_ + 1, rel);
}

Poset Poset::min_zero_extension() const {
  std::vector<std::pair<int, int>> rel = strict_pairs();
  for (int i : minimals()) rel.emplace_back(i, n_ + 1);
  return from_relations(n_ + 1, rel);
}

bool Poset::every_component_has_minimum() const {
  // union-find over comparability
  std::vector<int> parent(n_);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (auto [i, j] : strict_pairs()) parent[find(i - 1)] = find(j - 1);
  std::vector<int> min_count(n_, 0);
  for (int i : minimals()) ++min_count[find(i - 1)];
  for (int v = 0; v < n_; ++v)
    if (find(v) == v && min_count[v] != 1) return false;
  return true;
}

namespace {

ParsedPoset finish_parse(int n, std::vector<std::pair<int, int>> rels) {
  std::vector<int> relabel(n);
  std::iota(relabel.begin(), relabel.end(), 1);
  try {
    ParsedPoset out{Poset::from_relations(n, rels), relabel, false};
    return out;
  } catch (const ParseError& e) {
    if (std::string(e.what()).find("order convention") == std::string::npos) throw;
  }
  // labels incompatible with the order: relabel by a stable topological sort
  std::vector<std::vector<bool>> lt(n, std::vector<bool>(n, false));
  for (auto [a, b] : rels) {
    if (a < 1 || a > n || b < 1 || b > n) throw ParseError("relation label out of range");
    lt[a - 1][b - 1] = true;
  }
  std::vector<int> indeg(n, 0), order;
  std::vector<std::vector<bool>> cur = lt;
  std::vector<bool> used(n, false);
  for (int step = 0; step < n; ++step) {
    int pick = -1;
    for (int v = 0; v < n && pick < 0; ++v) {
      if (used[v]) continue;
      bool source = true;
      for (int u = 0; u < n && source; ++u) source = used[u] || !cur[u][v];
      if (source) pick = v;
    }
    if (pick < 0) throw ParseError("cycle detected (antisymmetry violated)");
    used[pick] = true;
    order.push_back(pick);
  }
  for (int pos = 0; pos < n; ++pos) relabel[order[pos]] = pos + 1;
  std::vector<std::pair<int, int>> newrels;
  for (auto [a, b] : rels) newrels.emplace_back(relabel[a - 1], relabel[b - 1]);
  return ParsedPoset{Poset::from_relations(n, newrels), relabel, true};
}

}  // namespace

ParsedPoset parse_poset(const std::string& text) {
  // JSON alternative
  size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
      throw ParseError(std::string("bad poset JSON: ") + e.what());
    }
    if (!j.contains("n") || !j["n"].is_number_integer()) throw ParseError("poset JSON needs integer field 'n'");
    int n = j["n"].get<int>();
    std::vector<std::pair<int, int>> rels;
    if (j.contains("lt"))
      for (const auto& e : j["lt"]) {
        if (!e.is_array() || e.size() != 2) throw ParseError("poset JSON 'lt' entries must be pairs");
        rels.emplace_back(e[0].get<int>(), e[1].get<int>());
      }
    return finish_parse(n, std::move(rels));
  }

  std::istringstream in(text);
  std::string line;
  int n = -1;
  std::vector<std::pair<int, int>> rels;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string s;
    for (char c : line) {
      if (c == '#') break;
      if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    }
    if (s.empty()) continue;
    // ';' separates several declarations on one line
    std::stringstream parts(s);
    std::string tok;
    while (std::getline(parts, tok, ';')) {
      if (tok.empty()) continue;
      if (tok.rfind("n=", 0) == 0) {
        if (n >= 0) throw ParseError("duplicate n= declaration");
        try {
          size_t used = 0;
          n = std::stoi(tok.substr(2), &used);
          if (used != tok.size() - 2) throw std::invalid_argument("");
        } catch (...) {
          throw ParseError("bad n= declaration at line " + std::to_string(lineno));
        }
        continue;
      }
      size_t lt = tok.find('<');
      if (lt == std::string::npos) throw ParseError("expected i<j at line " + std::to_string(lineno));
      try {
        int a = std::stoi(tok.substr(0, lt));
        int b = std::stoi(tok.substr(lt + 1));
        rels.emplace_back(a, b);
      } catch (...) {
        throw ParseError("bad relation at line " + std::to_string(lineno));
      }
    }
  }
  if (n < 0) throw ParseError("missing n= line");
  return finish_parse(n, std::move(rels));
}

MinimalMarking default_marking(const Poset& p) {
  MinimalMarking mm;
  mm.m.resize(p.size());
  for (int j = 1; j <= p.size(); ++j) mm.m[j - 1] = p.min_below(j).front();
  return mm;
}

MinimalMarking make_marking(const Poset& p, const std::vector<int>& values) {
  if (static_cast<int>(values.size()) != p.size())
    throw std::invalid_argument("marking size mismatch");
  for (int j = 1; j <= p.size(); ++j) {
    auto mb = p.min_below(j);
    if (std::find(mb.begin(), mb.end(), values[j - 1]) == mb.end())
      throw std::invalid_argument("m(" + std::to_string(j) + ") not a minimal element below " +
                                  std::to_string(j));
  }
  MinimalMarking mm;
  mm.m = values;
  return mm;
}

MinimalMarking parse_marking(const Poset& p, const std::string& text) {
  std::vector<int> v(default_marking(p).m);
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::string s;
    for (char c : line) {
      if (c == '#') break;
      if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    }
    if (s.empty()) continue;
    size_t eq = s.find('=');
    if (eq == std::string::npos) throw ParseError("marking lines are j=i");
    int j = std::stoi(s.substr(0, eq));
    int i = std::stoi(s.substr(eq + 1));
    if (j < 1 || j > p.size()) throw ParseError("marking label out of range");
    v[j - 1] = i;
  }
  return make_marking(p, v);
}

const OrbitData::PerVertex& OrbitData::at(int j) const {
  for (const auto& pv : vertices)
    if (pv.j == j) return pv;
  throw std::invalid_argument("no orbit data for vertex " + std::to_string(j));
}

OrbitData orbit_data(const Poset& p, const MinimalMarking& m) {
  OrbitData od;
  for (int j : p.derived()) {
    OrbitData::PerVertex pv;
    pv.j = j;
    std::vector<int> mins = p.min_below(j);
    std::vector<int> parent(mins.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    auto pos = [&](int label) {
      return static_cast<int>(std::find(mins.begin(), mins.end(), label) - mins.begin());
    };
    // h ~ h' when both are minimal below some i < j
    for (int i : p.lower(j)) {
      std::vector<int> sub = p.min_below(i);
      for (size_t t = 1; t < sub.size(); ++t) parent[find(pos(sub[0]))] = find(pos(sub[t]));
    }
    std::vector<std::vector<int>> classes(mins.size());
    for (size_t t = 0; t < mins.size(); ++t) classes[find(static_cast<int>(t))].push_back(mins[t]);
    for (auto& c : classes)
      if (!c.empty()) pv.classes.push_back(c);
    std::sort(pv.classes.begin(), pv.classes.end());
    pv.orb = static_cast<int>(pv.classes.size());
    for (const auto& c : pv.classes)
      if (std::find(c.begin(), c.end(), m(j)) == c.end()) pv.reps.push_back(c.front());
    od.vertices.push_back(std::move(pv));
  }
  return od;
}

Poset random_poset(int n, std::mt19937_64& rng) {
  std::vector<std::pair<int, int>> rels;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (rng() & 1u) rels.emplace_back(i, j);
  return Poset::from_relations(n, rels);
}

}  // namespace posetbocs
