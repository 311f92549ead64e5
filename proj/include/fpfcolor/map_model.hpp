#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "fpfcolor/geometry.hpp"

namespace fpfcolor {

using LatticeIndex = std::vector<long>;

struct GridSpec {
  int dim = 1;
  Rational spacing = Rational(1);
  Point origin;

  Point vertex_world(const LatticeIndex& v) const;
};

/// One affine piece of the map: a Kuhn simplex of a domain cell together
/// with its exact affine interpolant and cached image bounds.
struct DomainSimplex {
  int id = 0;
  LatticeIndex cell;
  int perm = 0;
  Simplex world;
  Polytope poly;
  AffineMap map;
  std::pair<Point, Point> image_bounds;
};

/// Piecewise-affine map over the Kuhn triangulation of a grid-cell union.
/// Continuity holds by construction: shared vertices share values.
class SampledMap {
 public:
  GridSpec grid;
  std::vector<LatticeIndex> cells;
  std::map<LatticeIndex, Point> values;

  int dim() const { return grid.dim; }
  void validate() const;
  bool cell_in_domain(const LatticeIndex& c) const;
  bool vertex_in_domain(const LatticeIndex& v) const;

  const std::vector<DomainSimplex>& simplices() const;
  Region domain_region() const;
  std::pair<Point, Point> domain_bounds() const;

  /// Exact PL evaluation; x must lie in the domain.
  Point eval(const Point& x) const;

  /// Halve the spacing; values of new vertices are exact evaluations.
  SampledMap subdivided() const;

  /// Grid-aligned box containing X and f(X) with one cell of slack per side.
  std::pair<Point, Point> ambient_box() const;

 private:
  mutable std::shared_ptr<std::vector<DomainSimplex>> simplices_;
};

struct SimplexWitness {
  int coordinate = 0;  // 1-based in reports, stored 0-based
  int sign = 1;        // +1 or -1
};

struct FpfCertificate {
  Rational delta;
  std::vector<SimplexWitness> witnesses;  // indexed by simplex id
  int depth = 0;                          // subdivision rounds applied
};

struct CertifyResult {
  SampledMap map;  // the (possibly subdivided) map the certificate refers to
  FpfCertificate cert;
};

/// Sign-certify fixed-point freeness with margin; retries on dyadic
/// subdivisions up to max_subdiv, then reports the offending simplices.
CertifyResult certify_fpf(const SampledMap& m, int max_subdiv = 4);

/// f(F) for F inside the domain; throws PieceOutsideDomain otherwise.
Region image_region(const SampledMap& m, const Region& f);
/// f(F cap X): pieces are clipped to the domain, no containment check.
Region image_region_clipped(const SampledMap& m, const Region& f);

Region preimage_region(const SampledMap& m, const Region& r);
/// {x in D : f(x) in R} for a sub-domain D of X.
Region preimage_region_in(const SampledMap& m, const Region& domain, const Region& r);

struct LiftResult {
  SampledMap lifted;
  bool fixed_simplices_clear = true;
  std::vector<int> risky_simplices;  // extension simplices meeting X without a sign witness
  Rational truncation;
};

/// g(y, r) = (h(y), r + phi(y)) on Y x [0, r_cells*spacing].
LiftResult lift_cylinder(const SampledMap& f, const SampledMap& h,
                         const std::map<LatticeIndex, Rational>& phi, long r_cells,
                         std::optional<Rational> truncation = std::nullopt);

}  // namespace fpfcolor
