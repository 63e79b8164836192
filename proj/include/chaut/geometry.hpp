#pragma once

// Rational polytopes and cellular complexes on the cube [0,1]^d.
//
// Cells are kept in V-representation. Halfspaces are integer homogeneous
// forms h on Q^{d+1}: the halfspace of h is { x : h . (x, 1) >= 0 }.
// Clipping and refinement are exact in every dimension; ambient dimensions
// 1 and 2 use dedicated fast paths, higher dimensions fall back to
// brute-force vertex enumeration.

#include <map>
#include <memory>
#include <set>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chaut/ratmath.hpp"

namespace chaut {

using HomogForm = IntVector;

/// h . (p, 1)
Rational evaluate(const HomogForm& h, const Point& p);

/// Affine dimension of a point set (-1 when empty).
int affine_dimension(const std::vector<Point>& points);

class Polytope {
 public:
  Polytope() = default;

  /// Convex hull. The stored vertices are exactly the extreme points; in
  /// dimension 2 they are in counter-clockwise order, in dimension 1 sorted.
  static Polytope hull(std::vector<Point> points, int ambient_dim);
  static Polytope cube(int ambient_dim);

  int ambient_dim() const { return ambient_dim_; }
  int dim() const { return dim_; }
  bool empty() const { return vertices_.empty(); }
  bool full_dimensional() const { return dim_ == ambient_dim_; }

  const std::vector<Point>& vertices() const { return vertices_; }
  /// Facet-defining forms, primitive and inward. Only for full-dimensional polytopes.
  const std::vector<HomogForm>& facets() const { return facets_; }
  /// Faces as sets of indices into vertices(), including the polytope itself.
  const std::vector<std::vector<int>>& faces() const { return faces_; }
  /// Dimension of faces()[i].
  const std::vector<int>& face_dims() const { return face_dims_; }

  bool contains(const Point& p) const;
  /// Strict interior, relative to the ambient space.
  bool contains_interior(const Point& p) const;

  Rational volume() const;
  /// Average of the vertices; an interior point of a full-dimensional polytope.
  Point centroid() const;

  const Point& lower() const { return lower_; }
  const Point& upper() const { return upper_; }
  bool boxes_overlap(const Polytope& other) const;

 private:
  void finish();

  int ambient_dim_ = 0;
  int dim_ = -1;
  std::vector<Point> vertices_;
  std::vector<HomogForm> facets_;
  std::vector<std::vector<int>> faces_;
  std::vector<int> face_dims_;
  Point lower_, upper_;
};

/// P intersected with the halfspace of h.
Polytope clip(const Polytope& p, const HomogForm& h);
Polytope intersect(const Polytope& a, const Polytope& b);

/// Simplices (as vertex index tuples) of a pulling triangulation of a full-dimensional polytope.
std::vector<std::vector<int>> triangulate(const Polytope& p);

// ---------------------------------------------------------------------------

struct Face {
  int dim = 0;
  std::vector<int> vertices;  // sorted global vertex ids

  bool operator==(const Face&) const = default;
};

/// A finite rational cellular complex in [0,1]^d, stored by its top cells.
/// The face lattice is rebuilt from the top cells at construction; the
/// object is immutable afterwards.
class CellularComplex {
 public:
  CellularComplex() = default;

  /// Top cells are vertex-id lists. Only structural errors throw
  /// (InvalidComplex); geometric defects are left to validate_complex.
  static CellularComplex from_cells(int ambient_dim, std::vector<Point> vertices,
                                    std::vector<std::vector<int>> top_cells);
  /// Top cells in the given order; vertices are shared by exact coordinates.
  static CellularComplex from_polytopes(int ambient_dim, const std::vector<Polytope>& cells);
  static CellularComplex cube(int ambient_dim);

  int ambient_dim() const { return ambient_dim_; }
  const std::vector<Point>& vertices() const { return vertices_; }
  std::size_t num_top() const { return top_cells_.size(); }
  const std::vector<int>& top_cell(std::size_t i) const { return top_cells_[i]; }
  const Polytope& top_polytope(std::size_t i) const { return polytopes_[i]; }

  /// Every cell of the complex, ordered by (dim, vertex ids).
  const std::vector<Face>& cells() const { return cells_; }
  /// Pairs (face, coface) of indices into cells() with dimensions differing by one.
  const std::vector<std::pair<int, int>>& incidence() const { return incidence_; }
  /// Index into cells() of a given vertex set, if it is a cell.
  std::optional<int> find_cell(const std::vector<int>& sorted_ids) const;
  std::optional<int> find_vertex(const Point& p) const;
  /// Top cells containing a vertex.
  const std::vector<std::size_t>& tops_containing(int vertex_id) const { return vertex_tops_[vertex_id]; }
  /// Whether a sorted vertex-id set spans a face of the given top cell.
  bool is_face_of_top(const std::vector<int>& sorted_ids, std::size_t top) const;

 private:
  void build_lattice();

  int ambient_dim_ = 0;
  std::vector<Point> vertices_;
  std::vector<std::vector<int>> top_cells_;
  std::vector<Polytope> polytopes_;
  std::vector<Face> cells_;
  std::vector<std::pair<int, int>> incidence_;
  std::map<Point, int, PointLess> vertex_index_;
  std::map<std::vector<int>, int> cell_index_;
  std::vector<std::set<std::vector<int>>> top_faces_;
  std::vector<std::vector<std::size_t>> vertex_tops_;
};

using ComplexPtr = std::shared_ptr<const CellularComplex>;

bool in_cube(const Point& p);

/// Lowest-id top cell containing p. Throws OutOfDomain.
std::size_t locate(const CellularComplex& complex, const Point& p);

struct UnimodularityResult {
  bool unimodular = false;
  std::optional<std::size_t> failing_cell;
  std::string witness;
};

UnimodularityResult is_unimodular(const CellularComplex& complex);

/// n x n matrix whose columns are the primitive homogeneous coordinates of the
/// cell's vertices, in the cell's stored order.
IntMatrix vertex_matrix(const CellularComplex& complex, std::size_t top);

struct Violation {
  std::string kind;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(const std::string& kind) const;
};

/// Checks rationality, closure under faces, pairwise intersection in common
/// faces, and (when requested) exact coverage of the cube.
ValidationReport validate_complex(const CellularComplex& complex, bool covers_cube = true);

struct Overlay {
  CellularComplex complex;
  std::vector<std::size_t> parent_a;
  std::vector<std::size_t> parent_b;
};

/// Full-dimensional pairwise intersections of top cells, with parents.
Overlay overlay(const CellularComplex& a, const CellularComplex& b);
CellularComplex common_refinement(const CellularComplex& a, const CellularComplex& b);

struct Slicing {
  CellularComplex complex;
  std::vector<std::size_t> parent;
  /// +1 where the cut form is >= 0 on the piece, -1 where <= 0, 0 where the cell was not cut
  /// and the form is identically zero on it (or absent).
  std::vector<int> side;
};

/// Splits each top cell along the zero set of its own cut form.
Slicing slice(const CellularComplex& complex, const std::vector<std::optional<HomogForm>>& cuts);

/// Same top cells, possibly in a different order.
bool same_top_cells(const CellularComplex& a, const CellularComplex& b);

// ---------------------------------------------------------------------------
// The cone P, its X/Y coordinates and the fans Delta, Sigma.

enum class CoordChange { XtoY, YtoX };

/// X -> Y: a_n = b_n + max(b_1..b_{n-1}); Y -> X: b_n = a_n - max(a_1..a_{n-1}).
/// Throws OutOfCone on negative coordinates.
Vector<Rational> xy_transform(const Vector<Rational>& u, CoordChange direction);

struct Fan {
  int n = 0;
  /// Generator matrices; the columns span each top cone.
  std::vector<IntMatrix> cones;
};

bool is_unimodular(const Fan& fan);

struct DeltaSigma {
  int n = 0;
  std::vector<std::vector<int>> permutations;
  std::vector<IntMatrix> n_matrices;  // generators of W_rho
  std::vector<IntMatrix> m_matrices;  // generators of R_rho
  std::vector<IntMatrix> phi;         // M_rho * N_rho^{-1}, the linear piece of Phi on W_rho
  Fan delta;
  Fan sigma;
};

/// Builds both fans over all (n-1)! permutations. Throws Unsupported outside 2 <= n <= bound.
DeltaSigma build_delta_sigma(int n, int bound = 7);

/// Phi at a point of the cone P. Throws OutOfCone.
Vector<Rational> apply_phi(const DeltaSigma& ds, const Vector<Rational>& u);

}  // namespace chaut
