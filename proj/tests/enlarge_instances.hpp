#pragma once

// Seeded random ENLARGE instances shared by the unit and acceptance suites.

#include <utility>
#include <vector>

#include "fpfcolor/geometry.hpp"

namespace fpfcolor::testing {

struct EnlargeInstance {
  SimplicialComplex complex;
  std::vector<std::pair<Region, Region>> pairs;
};

inline Region box_region_1d(const Rational& a, const Rational& b) {
  return Region::from_polytope(Polytope::box({a}, {b}));
}

// n=1: unit segments over [0, L]; two pairs of disjoint closed intervals
// with half-integer endpoints, assignment shuffled by the seed.
inline EnlargeInstance random_instance_1d(Rng& rng) {
  EnlargeInstance inst;
  long len = 8 + static_cast<long>(rng.below(3));  // [0, 8..10]
  ComplexBuilder b(1);
  for (long i = 0; i < len; ++i)
    b.add_simplex({Point{Rational(i)}, Point{Rational(i + 1)}});
  inst.complex = b.take();

  // four strictly separated intervals on the 1/2 grid; total extent <= 8
  std::vector<std::pair<Rational, Rational>> segs;
  Rational cursor(0);
  for (int s = 0; s < 4; ++s) {
    Rational start = cursor + Rational(static_cast<long>(rng.below(2)), 2);
    Rational width(1 + static_cast<long>(rng.below(2)), 2);
    Rational end = start + width;
    segs.emplace_back(start, end);
    cursor = end + Rational(1, 2);  // strict gap
  }
  std::vector<int> order{0, 1, 2, 3};
  for (int i = 3; i > 0; --i) std::swap(order[i], order[rng.below(static_cast<std::uint64_t>(i + 1))]);
  Region c1 = box_region_1d(segs[order[0]].first, segs[order[0]].second);
  Region d1 = box_region_1d(segs[order[1]].first, segs[order[1]].second);
  Region c2 = box_region_1d(segs[order[2]].first, segs[order[2]].second);
  Region d2(1);
  if (rng.below(4) != 0)  // occasionally leave an anchor empty
    d2 = box_region_1d(segs[order[3]].first, segs[order[3]].second);
  inst.pairs.emplace_back(std::move(c1), std::move(d1));
  inst.pairs.emplace_back(std::move(c2), std::move(d2));
  return inst;
}

// n=2: Kuhn-triangulated box of unit cells; three pairs of axis-aligned
// boxes with half-integer corners, rejection-sampled so C_i and D_i are
// exactly disjoint (cross-pair overlaps stay allowed).
inline EnlargeInstance random_instance_2d(Rng& rng) {
  EnlargeInstance inst;
  long w = 2, h = 2;
  ComplexBuilder b(2);
  auto kuhn = kuhn_simplices(2);
  for (long x = 0; x < w; ++x) {
    for (long y = 0; y < h; ++y) {
      for (const auto& s : kuhn) {
        std::vector<Point> verts;
        for (const auto& v : s.verts)
          verts.push_back(Point{v[0] + Rational(x), v[1] + Rational(y)});
        b.add_simplex(verts);
      }
    }
  }
  inst.complex = b.take();

  auto random_box = [&](void) {
    Rational x0(static_cast<long>(rng.below(2 * w - 1)), 2);
    Rational y0(static_cast<long>(rng.below(2 * h - 1)), 2);
    Rational x1 = x0 + Rational(1 + static_cast<long>(rng.below(2)), 2);
    Rational y1 = y0 + Rational(1 + static_cast<long>(rng.below(2)), 2);
    if (x1 > Rational(w)) x1 = Rational(w);
    if (y1 > Rational(h)) y1 = Rational(h);
    x0.canonicalize();
    y0.canonicalize();
    x1.canonicalize();
    y1.canonicalize();
    return Region::from_polytope(Polytope::box({x0, y0}, {x1, y1}));
  };
  for (int i = 0; i < 3; ++i) {
    Region c = random_box();
    Region d(2);
    for (int tries = 0; tries < 32; ++tries) {
      Region cand = random_box();
      if (regions_disjoint(c, cand)) {
        d = std::move(cand);
        break;
      }
    }
    inst.pairs.emplace_back(std::move(c), std::move(d));
  }
  return inst;
}

}  // namespace fpfcolor::testing
