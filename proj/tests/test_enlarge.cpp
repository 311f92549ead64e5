#include "doctest.h"
#include "enlarge_instances.hpp"
#include "fpfcolor/errors.hpp"
#include "fpfcolor/sphere_extend.hpp"
#include "interval_oracle.hpp"

using namespace fpfcolor;
using fpfcolor::testing::EnlargeInstance;
using fpfcolor::testing::IntervalSet;

namespace {

Rational q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

Region iv(long a, long b) { return Region::from_polytope(Polytope::box({q(a)}, {q(b)})); }

SimplicialComplex segment_complex(long lo, long hi) {
  ComplexBuilder b(1);
  for (long i = lo; i < hi; ++i) b.add_simplex({Point{q(i)}, Point{q(i + 1)}});
  return b.take();
}

void check_full_suite(const SimplicialComplex& k,
                      const std::vector<std::pair<Region, Region>>& pairs,
                      const EnlargeResult& res) {
  size_t n1 = pairs.size();
  REQUIRE(res.a.size() == n1);
  REQUIRE(res.b.size() == n1);
  REQUIRE(res.report.all_passed());
  // independent re-checks on top of the construction's own gate
  for (size_t i = 0; i < n1; ++i) {
    CHECK(regions_disjoint(res.a[i], res.b[i]));
    CHECK(region_covered(pairs[i].first, res.a[i]));
    CHECK(region_covered(pairs[i].second, res.b[i]));
    for (size_t j = 0; j < n1; ++j) {
      Region za = region_intersect(res.a[i], pairs[j].first);
      CHECK(region_covered(za, pairs[i].first));
      Region zb = region_intersect(res.a[i], pairs[j].second);
      CHECK(region_covered(zb, pairs[i].first));
      Region wa = region_intersect(res.b[i], pairs[j].first);
      CHECK(region_covered(wa, pairs[i].second));
      Region wb = region_intersect(res.b[i], pairs[j].second);
      CHECK(region_covered(wb, pairs[i].second));
    }
  }
  // cover of |K| by an independent route: simplex barycenters and vertices
  for (size_t si = 0; si < k.simplices.size(); ++si) {
    Simplex s = k.geom(static_cast<int>(si));
    std::vector<Point> probes = s.verts;
    probes.push_back(s.barycenter());
    for (const auto& p : probes) {
      bool hit = false;
      for (size_t i = 0; i < n1 && !hit; ++i)
        hit = res.a[i].contains(p) || res.b[i].contains(p);
      CHECK(hit);
    }
  }
}

}  // namespace

TEST_CASE("cone membership closed-form cases") {
  // n=1 cube I^2, cones indexed over coordinates
  Point face0{q(0), q(1, 3)};
  CHECK(cone_membership(face0, 0, 0));
  Point center{q(1, 2), q(1, 2)};
  for (int i = 0; i < 2; ++i)
    for (int side : {0, 1}) CHECK(cone_membership(center, i, side));
  Point edge{q(1, 2), q(0)};
  CHECK(!cone_membership(edge, 0, 0));  // slack 0 but |x_1 - 1/2| = 1/2
  CHECK(cone_membership(edge, 1, 0));

  // cones tile the cube: every sample point lies in some cone
  Rng rng(5);
  for (int it = 0; it < 200; ++it) {
    Point p{q(static_cast<long>(rng.below(17)), 16), q(static_cast<long>(rng.below(17)), 16)};
    bool hit = false;
    for (int i = 0; i < 2 && !hit; ++i)
      for (int side : {0, 1})
        if (cone_membership(p, i, side)) {
          hit = true;
          break;
        }
    CHECK(hit);
  }
  // polytope form agrees with the closed-form test
  for (int i = 0; i < 2; ++i) {
    for (int side : {0, 1}) {
      Polytope cone = cone_polytope(2, i, side);
      for (int it = 0; it < 100; ++it) {
        Point p{q(static_cast<long>(rng.below(9)), 8), q(static_cast<long>(rng.below(9)), 8)};
        CHECK(cone.contains(p) == cone_membership(p, i, side));
      }
    }
  }
}

TEST_CASE("enlarge on the 1-d four-anchor example") {
  SimplicialComplex k = segment_complex(0, 7);
  std::vector<std::pair<Region, Region>> pairs;
  pairs.emplace_back(iv(0, 1), iv(4, 5));
  pairs.emplace_back(iv(2, 3), iv(6, 7));
  EnlargeResult res = enlarge(k, pairs, 1);
  check_full_suite(k, pairs, res);

  // independent 1-d interval reasoning
  IntervalSet K{{{q(0), q(7)}}};
  IntervalSet z;
  for (const auto& pr : pairs) {
    for (const auto& seg : IntervalSet::from_region(pr.first).iv) z.iv.push_back(seg);
    for (const auto& seg : IntervalSet::from_region(pr.second).iv) z.iv.push_back(seg);
  }
  z.normalize();
  IntervalSet everything;
  for (int i = 0; i < 2; ++i) {
    IntervalSet a = IntervalSet::from_region(res.a[i]);
    IntervalSet b = IntervalSet::from_region(res.b[i]);
    CHECK(a.disjoint_from(b));
    CHECK(a.intersect(z).same_as(IntervalSet::from_region(pairs[i].first)));
    CHECK(b.intersect(z).same_as(IntervalSet::from_region(pairs[i].second)));
    for (const auto& seg : a.iv) everything.iv.push_back(seg);
    for (const auto& seg : b.iv) everything.iv.push_back(seg);
  }
  everything.normalize();
  CHECK(K.subset_of(everything));
}

TEST_CASE("enlarge is forced to the anchors when Z covers the complex") {
  SimplicialComplex k = segment_complex(0, 3);
  std::vector<std::pair<Region, Region>> pairs;
  pairs.emplace_back(iv(0, 1), iv(2, 3));
  pairs.emplace_back(iv(1, 2), Region(1));
  EnlargeResult res = enlarge(k, pairs, 7);
  check_full_suite(k, pairs, res);
  CHECK(region_covered(res.a[0], pairs[0].first));
  CHECK(region_covered(res.b[0], pairs[0].second));
  CHECK(region_covered(res.a[1], pairs[1].first));
  CHECK(res.b[1].is_empty());
}

TEST_CASE("enlarge rejects meeting pairs with a witness") {
  SimplicialComplex k = segment_complex(0, 3);
  std::vector<std::pair<Region, Region>> pairs;
  pairs.emplace_back(iv(0, 1), iv(1, 2));  // touch at 1
  pairs.emplace_back(iv(0, 0), Region(1));
  CHECK_THROWS_WITH_AS(enlarge(k, pairs, 0), doctest::Contains("PairsNotDisjoint"),
                       HypothesisError);
}

TEST_CASE("enlarge rejects a complex of too-high dimension") {
  ComplexBuilder b(2);
  b.add_simplex({Point{q(0), q(0)}, Point{q(1), q(0)}, Point{q(0), q(1)}});
  SimplicialComplex k = b.take();
  std::vector<std::pair<Region, Region>> pairs;
  pairs.emplace_back(Region(2), Region(2));  // single pair: needs dim K <= 0
  CHECK_THROWS_WITH_AS(enlarge(k, pairs, 0), doctest::Contains("DimensionTooHigh"),
                       HypothesisError);
}

TEST_CASE("enlarge antipodal anchors force a subdivision, then pass") {
  // C1 and D1 meet the same segment from both ends: without the repair the
  // straight edge would map onto a diagonal of the square through the center
  SimplicialComplex k = segment_complex(0, 1);
  std::vector<std::pair<Region, Region>> pairs;
  pairs.emplace_back(iv(0, 0), iv(1, 1));
  pairs.emplace_back(iv(0, 0), iv(1, 1));
  EnlargeResult res = enlarge(k, pairs, 3);
  CHECK(res.report.stellar_stars > 0);
  check_full_suite(k, pairs, res);
}

TEST_CASE("enlarge is seed-deterministic") {
  SimplicialComplex k = segment_complex(0, 5);
  std::vector<std::pair<Region, Region>> pairs;
  pairs.emplace_back(iv(0, 1), iv(3, 4));
  pairs.emplace_back(iv(2, 2), iv(5, 5));
  EnlargeResult r1 = enlarge(k, pairs, 42);
  EnlargeResult r2 = enlarge(k, pairs, 42);
  CHECK(r1.seed_used == r2.seed_used);
  REQUIRE(r1.field.size() == r2.field.size());
  for (size_t i = 0; i < r1.field.size(); ++i) CHECK(point_cmp(r1.field[i], r2.field[i]) == 0);
  for (int i = 0; i < 2; ++i) {
    REQUIRE(r1.a[i].pieces().size() == r2.a[i].pieces().size());
    for (size_t p = 0; p < r1.a[i].pieces().size(); ++p)
      CHECK(r1.a[i].pieces()[p].key() == r2.a[i].pieces()[p].key());
  }
  EnlargeResult r3 = enlarge(k, pairs, 43);
  bool same = r3.field.size() == r1.field.size();
  if (same)
    for (size_t i = 0; i < r1.field.size(); ++i)
      if (point_cmp(r1.field[i], r3.field[i]) != 0) same = false;
  CHECK(!same);
}

TEST_CASE("random 1-d instances pass the exact suite") {
  Rng rng(101);
  for (int it = 0; it < 12; ++it) {
    EnlargeInstance inst = fpfcolor::testing::random_instance_1d(rng);
    EnlargeResult res = enlarge(inst.complex, inst.pairs, 1000 + it);
    check_full_suite(inst.complex, inst.pairs, res);
  }
}

TEST_CASE("random 2-d instances pass the exact suite") {
  Rng rng(202);
  for (int it = 0; it < 3; ++it) {
    EnlargeInstance inst = fpfcolor::testing::random_instance_2d(rng);
    EnlargeResult res = enlarge(inst.complex, inst.pairs, 2000 + it);
    check_full_suite(inst.complex, inst.pairs, res);
  }
}
