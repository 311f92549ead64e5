#include <algorithm>

#include "doctest.h"
#include "fpfcolor/geometry.hpp"

using namespace fpfcolor;

namespace {

Rational q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

Point pt(std::initializer_list<long> xs) {
  Point p;
  for (long x : xs) p.push_back(q(x));
  return p;
}

Polytope interval(long a, long b) { return Polytope::box({q(a)}, {q(b)}); }

}  // namespace

TEST_CASE("kuhn triangulation piece counts") {
  CHECK(kuhn_triangulate(1).size() == 1);
  CHECK(kuhn_triangulate(2).size() == 2);
  CHECK(kuhn_triangulate(3).size() == 6);
}

TEST_CASE("kuhn simplices tile the cube exactly") {
  for (int n : {1, 2, 3}) {
    auto simp = kuhn_simplices(n);
    Rational vol(0);
    for (const auto& s : simp) vol += s.volume();
    CHECK(vol == 1);
    // pairwise interiors disjoint: strict systems have no common point
    for (size_t i = 0; i < simp.size(); ++i) {
      for (size_t j = i + 1; j < simp.size(); ++j) {
        Polytope pi = simp[i].to_polytope(n);
        Polytope pj = simp[j].to_polytope(n);
        std::vector<Point> cs;
        std::vector<Rational> ds;
        for (const auto& h : pi.halfspaces()) {
          cs.push_back(h.normal);
          ds.push_back(h.offset);
        }
        for (const auto& h : pj.halfspaces()) {
          cs.push_back(h.normal);
          ds.push_back(h.offset);
        }
        CHECK(!lp_strict_feasible_point({}, {}, cs, ds).has_value());
      }
    }
  }
}

TEST_CASE("interval intersection cases") {
  Point w;
  CHECK(polytope_intersection_empty(interval(0, 1), interval(2, 3)));
  CHECK(!polytope_intersection_empty(interval(0, 1), interval(1, 2), &w));
  CHECK(w == Point{q(1)});  // shared closed endpoint
}

TEST_CASE("triangle meets box at a face point") {
  // triangle {x>=0, y>=0, x+y<=1} vs box {1/2<=x<=2, 0<=y<=2}
  Polytope tri(2);
  tri.add(HalfSpace(pt({-1, 0}), q(0)));
  tri.add(HalfSpace(pt({0, -1}), q(0)));
  tri.add(HalfSpace(pt({1, 1}), q(1)));
  Polytope box = Polytope::box({q(1, 2), q(0)}, {q(2), q(2)});
  Point w;
  CHECK(!polytope_intersection_empty(tri, box, &w));
  CHECK(tri.contains(w));
  CHECK(box.contains(w));
  Point hand{q(1, 2), q(0)};  // solved by hand from the joint system
  CHECK(tri.contains(hand));
  CHECK(box.contains(hand));
}

TEST_CASE("intersection emptiness is symmetric and sampling-sound") {
  Rng rng(2024);
  int checked = 0;
  for (int iter = 0; iter < 1000; ++iter) {
    int n = 1 + static_cast<int>(rng.below(2));
    Point lo1(n), hi1(n), lo2(n), hi2(n);
    for (int i = 0; i < n; ++i) {
      long a = static_cast<long>(rng.below(9)) - 4;
      long b = static_cast<long>(rng.below(9)) - 4;
      lo1[i] = q(std::min(a, b), 2);
      hi1[i] = q(std::max(a, b) + 1, 2);
      a = static_cast<long>(rng.below(9)) - 4;
      b = static_cast<long>(rng.below(9)) - 4;
      lo2[i] = q(std::min(a, b), 2);
      hi2[i] = q(std::max(a, b) + 1, 2);
    }
    Polytope p = Polytope::box(lo1, hi1);
    Polytope r = Polytope::box(lo2, hi2);
    bool e1 = polytope_intersection_empty(p, r);
    bool e2 = polytope_intersection_empty(r, p);
    CHECK(e1 == e2);
    if (!e1) continue;
    // dense rational grid sampling never lands in both
    for (int s = 0; s < 20; ++s) {
      Point x(n);
      for (int i = 0; i < n; ++i) x[i] = q(static_cast<long>(rng.below(33)) - 16, 4);
      CHECK(!(p.contains(x) && r.contains(x)));
      ++checked;
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("refine segment by midpoint") {
  ComplexBuilder b(1);
  b.add_simplex({pt({0}), pt({2})});
  SimplicialComplex k = b.take();
  SimplicialComplex r = refine_by_hyperplanes(k, {Hyperplane(pt({1}), q(1))});
  CHECK(r.simplices.size() == 2);
  Rational vol(0);
  for (size_t i = 0; i < r.simplices.size(); ++i) vol += r.geom(i).volume();
  CHECK(vol == 2);
}

TEST_CASE("refine triangle by a generic crossing line gives three pieces") {
  ComplexBuilder b(2);
  b.add_simplex({pt({0, 0}), pt({4, 0}), pt({0, 4})});
  SimplicialComplex k = b.take();
  // x = 1 crosses two edges; the quad side triangulates into two
  SimplicialComplex r = refine_by_hyperplanes(k, {Hyperplane(pt({1, 0}), q(1))});
  CHECK(r.simplices.size() == 3);
  Rational vol(0);
  for (size_t i = 0; i < r.simplices.size(); ++i) vol += r.geom(i).volume();
  CHECK(vol == 8);
  // every barycenter sits strictly on one side or on the line
  for (size_t i = 0; i < r.simplices.size(); ++i) {
    Simplex s = r.geom(i);
    bool lo = true, hi = true;
    for (const auto& v : s.verts) {
      if (v[0] > 1) lo = false;
      if (v[0] < 1) hi = false;
    }
    CHECK((lo || hi));
  }
}

TEST_CASE("refine with no hyperplanes is the identity") {
  ComplexBuilder b(2);
  b.add_simplex({pt({0, 0}), pt({1, 0}), pt({0, 1})});
  SimplicialComplex k = b.take();
  SimplicialComplex r = refine_by_hyperplanes(k, {});
  CHECK(r.simplices.size() == 1);
}

TEST_CASE("refinement keeps shared faces consistent") {
  // two triangles sharing the diagonal, cut by a line crossing both
  ComplexBuilder b(2);
  b.add_simplex({pt({0, 0}), pt({2, 0}), pt({2, 2})});
  b.add_simplex({pt({0, 0}), pt({0, 2}), pt({2, 2})});
  SimplicialComplex k = b.take();
  SimplicialComplex r = refine_by_hyperplanes(k, {Hyperplane(pt({0, 1}), q(1))});
  Rational vol(0);
  for (size_t i = 0; i < r.simplices.size(); ++i) vol += r.geom(i).volume();
  CHECK(vol == 4);
  // complex property: any two simplices meet in a common face, i.e. the
  // intersection of their polytopes equals the hull of their shared vertices
  for (size_t i = 0; i < r.simplices.size(); ++i) {
    for (size_t j = i + 1; j < r.simplices.size(); ++j) {
      Polytope pi = r.geom(i).to_polytope(2);
      Polytope pj = r.geom(j).to_polytope(2);
      Polytope meet = pi.intersect(pj);
      if (meet.is_empty()) continue;
      std::vector<Point> shared;
      for (int a : r.simplices[i])
        for (int bidx : r.simplices[j])
          if (a == bidx) shared.push_back(r.verts[a]);
      REQUIRE(!shared.empty());
      Polytope hull = hull_of_points(2, shared);
      CHECK(meet.subset_of(hull));
      CHECK(hull.subset_of(meet));
    }
  }
}

TEST_CASE("affine image on intervals and triangles") {
  // f(x) = x+1 on [0,1/2] -> [1,3/2]
  AffineMap f{{{q(1)}}, {q(1)}};
  Polytope p = Polytope::box({q(0)}, {q(1, 2)});
  Polytope img = affine_image(p, f);
  CHECK(img.same_set(Polytope::box({q(1)}, {q(3, 2)})));

  // reflection of a triangle
  AffineMap neg{{{q(-1), q(0)}, {q(0), q(-1)}}, {q(0), q(0)}};
  Polytope tri = hull_of_points(2, {pt({0, 0}), pt({1, 0}), pt({0, 1})});
  Polytope rtri = affine_image(tri, neg);
  Polytope expect = hull_of_points(2, {pt({0, 0}), pt({-1, 0}), pt({0, -1})});
  CHECK(rtri.same_set(expect));

  // constant map collapses to a point
  AffineMap cst{{{q(0)}}, {q(7)}};
  Polytope ptp = affine_image(interval(0, 3), cst);
  CHECK(ptp.contains(Point{q(7)}));
  CHECK(!ptp.contains(Point{q(8)}));
  CHECK(ptp.affine_dim() == 0);
}

TEST_CASE("affine image equals hull of vertex images") {
  AffineMap f{{{q(1), q(2)}, {q(0), q(1)}}, {q(3), q(-1)}};
  Polytope tri = hull_of_points(2, {pt({0, 0}), pt({2, 0}), pt({0, 2})});
  Polytope img = affine_image(tri, f);
  std::vector<Point> vimg;
  for (const auto& v : tri.vertices()) vimg.push_back(f.apply(v));
  Polytope hull = hull_of_points(2, vimg);
  CHECK(img.same_set(hull));
  for (const auto& v : img.vertices()) CHECK(hull.contains(v));
}

TEST_CASE("covered detects exact unions and gaps") {
  Polytope base = interval(0, 2);
  CHECK(piece_covered(base, {interval(0, 1), interval(1, 2)}));
  Point w;
  CHECK(!piece_covered(base, {interval(0, 1)}, &w));
  CHECK(w[0] > 1);
  CHECK(w[0] <= 2);
  // closed cover with only endpoint overlap still covers
  CHECK(piece_covered(interval(0, 4), {interval(0, 1), interval(1, 3), interval(3, 4)}));
  // a pinhole (single shared point missing) is caught
  Polytope gap(1);
  gap.add(HalfSpace(pt({1}), q(4)));
  gap.add(HalfSpace(pt({-1}), q(0)));
  CHECK(!piece_covered(gap, {interval(0, 1), interval(2, 4)}, &w));
  CHECK(w[0] > 1);
  CHECK(w[0] < 2);
}

TEST_CASE("region distance is the exact inf gap") {
  Region a = Region::from_polytope(interval(0, 1));
  Region b = Region::from_polytope(interval(3, 5));
  CHECK(region_distance_inf(a, b) == 2);
  Region c = Region::from_polytope(interval(1, 2));
  CHECK(region_distance_inf(a, c) == 0);
}

TEST_CASE("swell grows by the exact box radius") {
  Region a = Region::from_polytope(interval(0, 1));
  Region s = swell_region(a, q(1, 4));
  REQUIRE(s.pieces().size() == 1);
  CHECK(s.pieces()[0].same_set(Polytope::box({q(-1, 4)}, {q(5, 4)})));

  // 2-d: swelling a diagonal segment is the hull of translated endpoints
  Region seg(2);
  seg.add(hull_of_points(2, {pt({0, 0}), pt({1, 1})}));
  Region s2 = swell_region(seg, q(1, 2));
  CHECK(s2.pieces()[0].contains(Point{q(3, 2), q(1)}));
  CHECK(!s2.pieces()[0].contains(Point{q(-1, 2), q(1)}));
}

TEST_CASE("subtract_open keeps the closed remainder") {
  Region base = Region::from_polytope(interval(0, 4));
  Region cut = Region::from_polytope(interval(1, 2));
  Region rem = subtract_open(base, {cut});
  // remainder is [0,1] union [2,4]
  CHECK(rem.contains(Point{q(1)}));
  CHECK(rem.contains(Point{q(2)}));
  CHECK(!rem.contains(Point{q(3, 2)}));
  CHECK(rem.contains(Point{q(0)}));
  CHECK(rem.contains(Point{q(4)}));
  Region expect(1);
  expect.add(interval(0, 1));
  expect.add(interval(2, 4));
  CHECK(region_covered(rem, expect));
  CHECK(region_covered(expect, rem));
}

TEST_CASE("simplify merges mergeable neighbors") {
  Region r(1);
  r.add(interval(0, 1));
  r.add(interval(1, 2));
  r.add(interval(0, 2));  // contains both
  simplify_region(r);
  CHECK(r.pieces().size() == 1);
  CHECK(r.pieces()[0].same_set(interval(0, 2)));

  Region s(1);
  s.add(interval(0, 1));
  s.add(interval(1, 3));
  simplify_region(s);
  CHECK(s.pieces().size() == 1);
  CHECK(s.pieces()[0].same_set(interval(0, 3)));
}

TEST_CASE("pull triangulation of a square is two triangles") {
  Cell sq{pt({0, 0}), pt({1, 0}), pt({0, 1}), pt({1, 1})};
  auto tris = pull_triangulate(sq);
  CHECK(tris.size() == 2);
  Rational vol(0);
  for (const auto& t : tris) vol += Simplex{t}.volume();
  CHECK(vol == 1);
}
