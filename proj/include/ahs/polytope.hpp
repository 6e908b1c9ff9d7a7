#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

namespace ahs {

using Rational = mpq_class;

struct Face {
  std::vector<int> vertices;  // sorted vertex indices
  std::vector<int> facets;    // indices of the (k-1)-faces it contains
};

/// Face lattice of a convex polytope, built from its facet/vertex incidences. Faces of each
/// dimension are indexed lexicographically by their sorted vertex sets; faces(dim()) holds
/// the polytope itself.
class FaceLattice {
 public:
  FaceLattice() = default;
  static FaceLattice from_facets(std::vector<std::vector<Rational>> coordinates,
                                 std::vector<std::vector<int>> facet_vertex_sets);

  int dim() const { return static_cast<int>(faces_.size()) - 1; }
  std::size_t vertex_count() const { return coordinates_.size(); }
  const std::vector<Face>& faces(int k) const { return faces_.at(static_cast<std::size_t>(k)); }
  const Face& face(int k, int index) const { return faces(k).at(static_cast<std::size_t>(index)); }
  const std::vector<std::vector<Rational>>& coordinates() const { return coordinates_; }
  std::vector<std::size_t> f_vector() const;

  /// (dim, index) of the face with exactly this vertex set.
  std::optional<std::pair<int, int>> locate(std::vector<int> vertices) const;
  /// Indices of the (k+1)-faces containing face (k, index).
  std::vector<int> cofaces(int k, int index) const;
  /// True iff the vertex map carries every face inside `within` onto a face.
  bool maps_faces(const std::vector<int>& within, const std::map<int, int>& vertex_map) const;

  /// One face per line: "dim index : v0 v1 ...".
  std::string dump() const;

 private:
  std::vector<std::vector<Rational>> coordinates_;
  std::vector<std::vector<Face>> faces_;
  std::map<std::vector<int>, std::pair<int, int>> index_;
};

/// The regular ideal 24-cell: vertices +-e_i and (+-1/2)^4, facets centred at the
/// permutations of (+-1, +-1, 0, 0). Vertex order: e1, -e1, ..., e4, -e4, then the
/// half-integer vertices with sign pattern m (bit i set = coordinate i negative) at 8 + m.
FaceLattice build_24cell();
/// The cube [0,1]^n; vertex index = sum of 2^i over coordinates equal to 1.
FaceLattice build_hypercube(int n);

/// Whether cells come straight from faces or from truncating every vertex.
enum class CellOrigin { face, truncated_face, vertex_link };

struct Cell {
  int dim = 0;
  int face_dim = 0;  // originating face of the polytope
  int face_index = 0;
  int cusp = -1;     // truncated vertex this cell lies over, or -1
  std::vector<int> facets;     // (dim-1)-cells in the boundary
  std::vector<int> incidence;  // +-1 per facet
  std::vector<int> vertices;   // 0-cells of the closure
  CellOrigin origin = CellOrigin::face;
};

/// Regular CW structure of a polytope (compact) or of its vertex truncation (ideal), with
/// incidence numbers satisfying boundary o boundary = 0.
class CellLattice {
 public:
  static CellLattice compact(FaceLattice lattice);
  /// Removes a neighbourhood of every vertex: each k-face F gives a truncated k-cell and
  /// each vertex v of F gives a (k-1)-cell of the link of v.
  static CellLattice truncated(FaceLattice lattice);

  const FaceLattice& polytope() const { return lattice_; }
  bool is_truncated() const { return truncated_; }
  int dim() const { return static_cast<int>(cells_.size()) - 1; }
  const std::vector<Cell>& cells(int k) const { return cells_.at(static_cast<std::size_t>(k)); }
  const Cell& cell(int k, int index) const { return cells(k).at(static_cast<std::size_t>(index)); }
  std::vector<std::size_t> f_vector() const;
  /// Cell built from polytope face (face_dim, face_index) over cusp (or -1); -1 if absent.
  int find(int face_dim, int face_index, int cusp) const;
  /// Indices of the top-dimensional-minus-one cells of the given origin.
  std::vector<int> facets_of(CellOrigin origin) const;

  std::string dump() const;

 private:
  void assign_incidences();

  FaceLattice lattice_;
  bool truncated_ = false;
  std::vector<std::vector<Cell>> cells_;
  std::map<std::tuple<int, int, int>, int> index_;
};

/// The 24-cell with horoball neighbourhoods of its ideal vertices removed: 24 cubical facets
/// (vertex links) and 24 truncated octahedra.
using TruncatedLattice = CellLattice;
inline TruncatedLattice truncate(FaceLattice lattice) { return CellLattice::truncated(std::move(lattice)); }

}  // namespace ahs
