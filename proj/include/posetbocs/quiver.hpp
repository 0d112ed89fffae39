#pragma once

#include <string>
#include <vector>

#include "posetbocs/matrix_algebra.hpp"
#include "posetbocs/poset.hpp"

namespace posetbocs {

/// Bound quiver: vertices, arrows, and relations given as K-linear
/// combinations of parallel paths. Arrows compose right to left; a path is
/// stored in traversal order (the first entry leaves the path's source).
struct QuiverPresentation {
  struct Arrow {
    std::string name;
    int src = 0, tgt = 0;
  };
  struct Term {
    Scalar coeff;
    std::vector<int> arrows;  // traversal order
  };
  using Relation = std::vector<Term>;

  Field field = Field::rationals();
  std::string name;
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;
  std::vector<Relation> relations;

  int arrow_index(const std::string& name) const;
  std::string path_str(const std::vector<int>& path, int src_vertex = -1) const;
};

/// All paths of an acyclic quiver, trivial paths included.
struct PathIndex {
  struct Path {
    int src = 0, tgt = 0;
    std::vector<int> arrows;  // empty = trivial path at src
  };
  std::vector<Path> paths;
  int count() const { return static_cast<int>(paths.size()); }
  int index_of(int src, const std::vector<int>& arrows) const;
  std::vector<int> paths_from(int v) const;  // indices of paths with src v
  std::vector<int> paths_into(int v) const;

 private:
  friend PathIndex enumerate_paths(const QuiverPresentation& q);
  std::vector<std::vector<int>> by_src_, by_tgt_;
};

/// Throws on cyclic quivers.
PathIndex enumerate_paths(const QuiverPresentation& q);

/// dim KQ/<relations>, with the two-sided ideal saturated by pre- and
/// post-composition with all paths. Exact; throws on cyclic quivers.
int path_algebra_dim(const QuiverPresentation& q);

/// Hasse presentation of the incidence algebra: cover arrows, all
/// parallel-path differences as relations.
QuiverPresentation hasse_presentation(const Field& f, const Poset& p);

/// Gabriel quiver of the row-balanced incidence algebra: vertices P'+{0},
/// cover arrows inside P', one arrow 0 -> j per orbit representative, with
/// commutativity and orbit-cycle relations.
QuiverPresentation row_balanced_presentation(const Field& f, const Poset& p,
                                             const MinimalMarking& m, const OrbitData& orbit);

/// Quiver of the right algebra: the Hasse presentation of the upper
/// suspension (cover arrows of P plus one arrow to * per maximal element).
QuiverPresentation right_quiver(const Field& f, const Poset& p);

/// Quiver of the basic left algebra: min(P) feeds the 0 vertex, orbit
/// representatives feed P', unique lower bounds give direct arrows.
QuiverPresentation left_quiver(const Field& f, const Poset& p, const MinimalMarking& m,
                               const OrbitData& orbit);

std::string to_dot(const QuiverPresentation& q);

/// Verifies the assignment vertex -> idempotent, arrow -> matrix defines an
/// isomorphism KQ/<relations> -> target: relations vanish, images span, and
/// the quotient dimension matches. Throws ConsistencyError on failure when
/// `strict`, else returns false.
bool presentation_isomorphic(const QuiverPresentation& q, const std::vector<Mat>& vertex_images,
                             const std::vector<Mat>& arrow_images, const MatrixAlgebra& target,
                             bool strict = false);

}  // namespace posetbocs
