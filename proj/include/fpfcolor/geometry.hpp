#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fpfcolor/lp.hpp"
#include "fpfcolor/rational.hpp"

namespace fpfcolor {

// ---------------------------------------------------------------------------
// halfspaces and hyperplanes

/// Closed halfspace {x : normal.x <= offset}. Canonical form scales by a
/// positive rational so the coefficients are coprime integers.
struct HalfSpace {
  Point normal;
  Rational offset;

  HalfSpace() = default;
  HalfSpace(Point n, Rational b) : normal(std::move(n)), offset(std::move(b)) {}

  Rational eval(const Point& x) const;  // normal.x - offset, <= 0 inside
  void canonicalize();
  std::string key() const;
  HalfSpace flipped() const;  // {normal.x >= offset} rewritten as <=
};

/// Cut locus {x : normal.x = offset}; canonical form also fixes the sign.
struct Hyperplane {
  Point normal;
  Rational offset;

  Hyperplane() = default;
  Hyperplane(Point n, Rational b) : normal(std::move(n)), offset(std::move(b)) {}
  explicit Hyperplane(const HalfSpace& h) : normal(h.normal), offset(h.offset) {}

  Rational eval(const Point& x) const;
  void canonicalize();
  std::string key() const;
  HalfSpace le() const { return HalfSpace(normal, offset); }
  HalfSpace ge() const { return HalfSpace(normal, offset).flipped(); }
};

// ---------------------------------------------------------------------------
// exact linear algebra (small dense systems)

using Matrix = std::vector<Point>;  // row major

int matrix_rank(Matrix m);
std::optional<Point> solve_square(Matrix a, Point b);
/// Basis of {x : m x = 0}.
std::vector<Point> nullspace(Matrix m);
std::optional<Matrix> invert(Matrix a);

// ---------------------------------------------------------------------------
// polytopes

class Polytope {
 public:
  Polytope() = default;
  explicit Polytope(int dim) : dim_(dim) {}
  static Polytope box(const Point& lo, const Point& hi);
  static Polytope whole(int dim) { return Polytope(dim); }
  static Polytope make_empty(int dim);

  int dim() const { return dim_; }
  const std::vector<HalfSpace>& halfspaces() const { return hs_; }
  /// Canonicalizes; silently drops trivially-true rows and flags the
  /// polytope empty on trivially-false rows (zero normals).
  void add(HalfSpace h);
  void add_all(const std::vector<HalfSpace>& hs);

  bool contains(const Point& x) const;
  bool is_empty() const;
  std::optional<Point> witness() const;
  LpResult maximize(const Point& c) const;

  /// Exact vertex set (basic feasible solutions). Requires boundedness.
  const std::vector<Point>& vertices() const;
  /// Componentwise [lo, hi] hull. Requires nonempty and bounded.
  const std::pair<Point, Point>& bounds() const;
  /// Average of the vertices; lies in the relative interior.
  Point rel_interior_point() const;

  int affine_dim() const;  // -1 when empty
  bool degenerate() const { return affine_dim() < dim_; }

  /// Drop duplicate and LP-redundant rows.
  void minimize();
  Polytope intersect(const Polytope& other) const;
  bool subset_of(const Polytope& other) const;
  bool same_set(const Polytope& other) const;
  std::string key() const;  // canonical form of the row set

 private:
  void invalidate() const;

  int dim_ = 0;
  bool force_empty_ = false;
  std::vector<HalfSpace> hs_;
  mutable std::optional<bool> empty_;
  mutable std::optional<std::vector<Point>> verts_;
  mutable std::optional<std::pair<Point, Point>> bounds_;
};

bool bounds_disjoint(const std::pair<Point, Point>& a, const std::pair<Point, Point>& b);

/// Exact emptiness of P cap Q with a rational witness when nonempty.
std::optional<Point> polytope_meet_witness(const Polytope& p, const Polytope& q);
bool polytope_intersection_empty(const Polytope& p, const Polytope& q,
                                 Point* witness = nullptr);

/// min over x in P, y in Q of |x-y|_inf (both nonempty).
Rational polytope_distance_inf(const Polytope& p, const Polytope& q);

// ---------------------------------------------------------------------------
// affine maps

struct AffineMap {
  Matrix m;  // rows: dim_out x dim_in
  Point c;

  int dim_in() const { return m.empty() ? 0 : static_cast<int>(m[0].size()); }
  int dim_out() const { return static_cast<int>(m.size()); }
  Point apply(const Point& x) const;
  /// Exact affine fit through sample points; under-determined directions get
  /// a constant extension so the map is defined on all of R^dim_in.
  static AffineMap fit(const std::vector<Point>& xs, const std::vector<Point>& ys);
  std::optional<AffineMap> inverse() const;
  /// {y : h(y)} pulled back through this map; normal may come out zero.
  HalfSpace pullback(const HalfSpace& h) const;
};

/// Exact image of a polytope under an affine map: halfspace transform when
/// the matrix is invertible, vertex hull otherwise.
Polytope affine_image(const Polytope& p, const AffineMap& f);

/// Convex hull of a point set in halfspace form (includes the affine-hull
/// equalities when the set is lower-dimensional). Brute-force facet
/// enumeration; meant for small point sets in low dimension.
Polytope hull_of_points(int dim, const std::vector<Point>& pts);

// ---------------------------------------------------------------------------
// simplices and complexes

struct Simplex {
  std::vector<Point> verts;  // k+1 affinely independent points

  int k() const { return static_cast<int>(verts.size()) - 1; }
  Point barycenter() const;
  Rational volume() const;  // |det|/n! for full-dimensional, else 0
  Polytope to_polytope(int ambient_dim) const;
  bool affinely_independent() const;
};

/// Kuhn decomposition of the local cube [0,1]^n: one simplex per coordinate
/// order, permutations enumerated lexicographically.
std::vector<Simplex> kuhn_simplices(int n);
/// The spec-level operation: triangulate one axis-aligned grid cell given in
/// cell-local coordinates.
std::vector<Simplex> kuhn_triangulate(int n);

struct SimplicialComplex {
  int dim = 0;
  std::vector<Point> verts;
  std::vector<std::vector<int>> simplices;  // sorted vertex ids

  Simplex geom(int i) const;
  Point vertex(int id) const { return verts[id]; }
};

class ComplexBuilder {
 public:
  explicit ComplexBuilder(int dim) { k_.dim = dim; }
  int add_vertex(const Point& p);
  void add_simplex(const std::vector<Point>& verts);
  void add_simplex_ids(std::vector<int> ids);
  SimplicialComplex take();

 private:
  SimplicialComplex k_;
  std::map<Point, int, PointLess> index_;
  std::map<std::vector<int>, bool> seen_;
};

/// Vertex sets of convex cells; splitting keeps the cells arrangement-aligned
/// so shared faces match exactly.
using Cell = std::vector<Point>;  // sorted, deduped

std::vector<Cell> split_cell(const Cell& cell, const Hyperplane& h);
/// Pulling triangulation at the lexicographically least vertex. Consistent
/// across cells that meet in common faces.
std::vector<std::vector<Point>> pull_triangulate(const Cell& cell);

SimplicialComplex refine_by_hyperplanes(const SimplicialComplex& k,
                                        const std::vector<Hyperplane>& cuts);

std::vector<Hyperplane> dedupe_hyperplanes(std::vector<Hyperplane> hs);

// ---------------------------------------------------------------------------
// regions (finite unions of polytopes; pieces may overlap)

class Region {
 public:
  Region() = default;
  explicit Region(int dim) : dim_(dim) {}
  static Region from_polytope(Polytope p);

  int dim() const { return dim_; }
  std::vector<Polytope>& pieces() { return pieces_; }
  const std::vector<Polytope>& pieces() const { return pieces_; }
  void add(Polytope p);
  void add_region(const Region& r);

  bool is_empty() const;
  bool contains(const Point& x) const;
  void drop_empty_pieces();
  size_t piece_count() const { return pieces_.size(); }
  /// Hyperplanes spanned by all piece facets.
  std::vector<Hyperplane> boundary_hyperplanes() const;
  std::optional<std::pair<Point, Point>> bbox() const;

 private:
  int dim_ = 0;
  std::vector<Polytope> pieces_;
};

Region region_intersect(const Region& r, const Polytope& p);
Region region_intersect(const Region& a, const Region& b);
Region region_union(const Region& a, const Region& b);

std::optional<Point> region_meet_witness(const Region& a, const Region& b);
bool regions_disjoint(const Region& a, const Region& b, Point* witness = nullptr);

/// Exact test P subset of union(cover), with an uncovered witness point on
/// failure. Handles lower-dimensional leftovers via strict systems.
bool piece_covered(const Polytope& base, const std::vector<Polytope>& cover,
                   Point* witness = nullptr);
bool region_covered(const Region& sub, const Region& cover, Point* witness = nullptr);

/// min inf-distance over piece pairs; requires both nonempty.
Rational region_distance_inf(const Region& a, const Region& b);

/// Dedupe, strip redundancy, drop contained pieces, merge convex unions.
void simplify_region(Region& r, int merge_passes = 2);

/// Closed Minkowski sum with [-eps, eps]^n, piecewise.
Region swell_region(const Region& r, const Rational& eps);

/// base minus the interiors of all pieces of all listed regions (closed).
Region subtract_open(const Region& base, const std::vector<Region>& removed);

}  // namespace fpfcolor
