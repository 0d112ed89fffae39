#pragma once

#include <random>
#include <string>
#include <vector>

#include "posetbocs/field.hpp"

namespace posetbocs {

/// Finite poset on labels 1..n with the convention i <= j as integers
/// whenever i precedes j in the order.
class Poset {
 public:
  /// Builds the reflexive-transitive closure of the given strict relations.
  /// Throws ParseError on cycles, out-of-range labels, or labels violating
  /// the integer-compatibility convention.
  static Poset from_relations(int n, const std::vector<std::pair<int, int>>& less_pairs);

  int size() const { return n_; }
  bool leq(int i, int j) const { return leq_[idx(i)][idx(j)]; }
  bool less(int i, int j) const { return i != j && leq(i, j); }
  /// Immediate successor: i < j with nothing strictly between.
  bool covers(int i, int j) const;

  std::vector<int> minimals() const;
  std::vector<int> maximals() const;
  bool is_minimal(int i) const;
  /// All i with i < j, ascending.
  std::vector<int> lower(int j) const;
  /// min(P, j): minimal elements below-or-equal j, ascending.
  std::vector<int> min_below(int j) const;
  /// Strict pairs (i, j) with i < j, sorted by (j, i).
  std::vector<std::pair<int, int>> strict_pairs() const;
  int card_strict() const { return static_cast<int>(strict_pairs().size()); }
  /// Cover pairs (i, j), sorted by (j, i).
  std::vector<std::pair<int, int>> cover_pairs() const;
  /// Non-minimal elements, ascending.
  std::vector<int> derived() const;

  Poset opposite() const;
  /// Upper suspension: new maximum labeled n+1 above everything.
  Poset suspension() const;
  /// New element labeled n+1 directly above every minimal element
  /// (incomparable with the rest).
  Poset min_zero_extension() const;
  bool every_component_has_minimum() const;

  bool operator==(const Poset& o) const { return n_ == o.n_ && leq_ == o.leq_; }

 private:
  static int idx(int label) { return label - 1; }
  int n_ = 0;
  std::vector<std::vector<bool>> leq_;
};

struct ParsedPoset {
  Poset poset;
  /// relabel[k-1] = new label of input element k (identity unless the input
  /// labeling violated the integer convention and was topologically fixed).
  std::vector<int> relabel;
  bool relabeled = false;
};

/// Text format: "n=<count>" then relation lines "i<j"; '#' comments.
/// A JSON object {"n":..,"lt":[[i,j],..]} is accepted as an alternative.
ParsedPoset parse_poset(const std::string& text);

struct MinimalMarking {
  /// m[j-1] in min(P, j); fixed points on minimal elements.
  std::vector<int> m;
  int operator()(int j) const { return m[j - 1]; }
};

/// Least element of min(P, j) for every j.
MinimalMarking default_marking(const Poset& p);
/// Validates m(j) in min(P, j).
MinimalMarking make_marking(const Poset& p, const std::vector<int>& values);
/// Lines "j=i" for non-minimal j; unspecified entries default to the least choice.
MinimalMarking parse_marking(const Poset& p, const std::string& text);

struct OrbitData {
  struct PerVertex {
    int j = 0;
    std::vector<std::vector<int>> classes;  // partition of min(P, j); each ascending; sorted by least element
    int orb = 0;                            // number of classes
    std::vector<int> reps;                  // least element of each class not containing m(j), ascending
  };
  std::vector<PerVertex> vertices;  // one per j in P', ascending
  const PerVertex& at(int j) const;
};

/// Classes of the equivalence on min(P, j) generated by "h ~ h' when both lie
/// below a common i < j", for every non-minimal j.
OrbitData orbit_data(const Poset& p, const MinimalMarking& m);

/// Random order: upper-triangular coin flips, then transitive closure.
Poset random_poset(int n, std::mt19937_64& rng);

}  // namespace posetbocs
