#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "fpfcolor/geometry.hpp"

namespace fpfcolor {

/// Exact membership in the radial cone from the cube center (1/2,...,1/2)
/// over the face {x_i = side} of I^{n1}: for side 0 the cone is
/// {x_i <= 1/2, max_{k!=i} |x_k - 1/2| <= 1/2 - x_i}, mirrored for side 1.
bool cone_membership(const Point& p, int i, int side);

/// Halfspace description of the same cone inside I^{n1}.
Polytope cone_polytope(int n1, int i, int side);

struct EnlargeCheckReport {
  bool apex_excluded = false;
  bool pairwise_disjoint = false;
  bool traces_exact = false;
  bool cover_certified = false;
  int retries_used = 0;
  int stellar_stars = 0;
  size_t simplex_count = 0;

  bool all_passed() const {
    return apex_excluded && pairwise_disjoint && traces_exact && cover_certified;
  }
};

struct EnlargeResult {
  std::vector<Region> a;  // enlarged C_i
  std::vector<Region> b;  // enlarged D_i
  std::uint64_t seed_used = 0;
  EnlargeCheckReport report;
  SimplicialComplex refined;
  std::vector<Point> field;  // accepted per-vertex cube values
};

/// Extend n+1 disjoint closed pairs (C_i, D_i) inside a complex of dimension
/// at most n to a closed cover {A_i, B_i} of |K| with A_i cap B_i empty and
/// exact traces A_i cap Z = C_i, B_i cap Z = D_i over Z = union of the pairs.
/// Construction: refine so each anchor is a subcomplex, star the faces that
/// would break trace exactness or pin the center into a simplex image, draw
/// the free field values from the seed, check the center is missed, and take
/// cone preimages. Every returned result has passed the exact check suite.
EnlargeResult enlarge(const SimplicialComplex& k,
                      const std::vector<std::pair<Region, Region>>& pairs,
                      std::uint64_t seed);

}  // namespace fpfcolor
