#include "fpfcolor/sphere_extend.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "fpfcolor/errors.hpp"

namespace fpfcolor {

bool cone_membership(const Point& p, int i, int side) {
  Rational half(1, 2);
  Rational slack = side == 0 ? half - p[i] : p[i] - half;
  if (slack < 0) return false;
  for (size_t k = 0; k < p.size(); ++k) {
    if (static_cast<int>(k) == i) continue;
    if (rational_abs(p[k] - half) > slack) return false;
  }
  return true;
}

Polytope cone_polytope(int n1, int i, int side) {
  Polytope c(n1);
  Rational half(1, 2);
  Point ei(n1, Rational(0));
  ei[i] = side == 0 ? 1 : -1;
  c.add(HalfSpace(ei, side == 0 ? half : -half));
  for (int k = 0; k < n1; ++k) {
    if (k == i) continue;
    Point r1(n1, Rational(0)), r2(n1, Rational(0));
    if (side == 0) {
      r1[i] = 1;
      r1[k] = 1;  // x_i + x_k <= 1
      c.add(HalfSpace(r1, Rational(1)));
      r2[i] = 1;
      r2[k] = -1;  // x_i - x_k <= 0
      c.add(HalfSpace(r2, Rational(0)));
    } else {
      r1[i] = -1;
      r1[k] = 1;  // x_k - x_i <= 0
      c.add(HalfSpace(r1, Rational(0)));
      r2[i] = -1;
      r2[k] = -1;  // -x_i - x_k <= -1
      c.add(HalfSpace(r2, Rational(-1)));
    }
  }
  return c;
}

namespace {

Point average_of(const std::vector<Point>& pts) {
  Point acc(pts[0].size(), Rational(0));
  for (const auto& p : pts)
    for (size_t i = 0; i < p.size(); ++i) acc[i] += p[i];
  Rational inv(1, static_cast<long>(pts.size()));
  inv.canonicalize();
  for (auto& x : acc) {
    x *= inv;
    x.canonicalize();
  }
  return acc;
}

Point face_barycenter(const SimplicialComplex& k, const std::vector<int>& ids) {
  std::vector<Point> pts;
  pts.reserve(ids.size());
  for (int id : ids) pts.push_back(k.verts[id]);
  return average_of(pts);
}

// c in conv(points)? exact feasibility in the barycentric weights
bool center_in_hull(const std::vector<Point>& pts, int n1) {
  size_t m = pts.size();
  Rational half(1, 2);
  std::vector<Point> rows;
  std::vector<Rational> rhs;
  auto eq = [&](const Point& coef, const Rational& b) {
    rows.push_back(coef);
    rhs.push_back(b);
    Point neg(coef.size());
    for (size_t j = 0; j < coef.size(); ++j) neg[j] = -coef[j];
    rows.push_back(std::move(neg));
    rhs.push_back(-b);
  };
  for (int i = 0; i < n1; ++i) {
    Point coef(m);
    for (size_t j = 0; j < m; ++j) coef[j] = pts[j][i];
    eq(coef, half);
  }
  eq(Point(m, Rational(1)), Rational(1));
  for (size_t j = 0; j < m; ++j) {
    Point coef(m, Rational(0));
    coef[j] = -1;
    rows.push_back(std::move(coef));
    rhs.push_back(Rational(0));
  }
  return lp_feasible_point(rows, rhs).has_value();
}

// stellar subdivision at the barycenter of the face (given by vertex ids);
// a face no longer present in the complex is a no-op
void star_face(SimplicialComplex& k, const std::vector<int>& face) {
  bool present = false;
  for (const auto& s : k.simplices)
    if (std::includes(s.begin(), s.end(), face.begin(), face.end())) {
      present = true;
      break;
    }
  if (!present) return;
  Point w = face_barycenter(k, face);
  int wid = -1;
  for (size_t v = 0; v < k.verts.size(); ++v)
    if (point_cmp(k.verts[v], w) == 0) {
      wid = static_cast<int>(v);
      break;
    }
  if (wid < 0) {
    wid = static_cast<int>(k.verts.size());
    k.verts.push_back(w);
  }
  std::vector<std::vector<int>> out;
  out.reserve(k.simplices.size());
  for (auto& s : k.simplices) {
    bool has = std::includes(s.begin(), s.end(), face.begin(), face.end());
    if (!has) {
      out.push_back(std::move(s));
      continue;
    }
    for (int drop : face) {
      std::vector<int> t;
      t.reserve(s.size());
      for (int v : s)
        if (v != drop) t.push_back(v);
      t.push_back(wid);
      std::sort(t.begin(), t.end());
      out.push_back(std::move(t));
    }
  }
  k.simplices = std::move(out);
}

}  // namespace

EnlargeResult enlarge(const SimplicialComplex& k_in,
                      const std::vector<std::pair<Region, Region>>& pairs,
                      std::uint64_t seed) {
  const int n1 = static_cast<int>(pairs.size());
  if (n1 < 1) throw InputError("enlarge needs at least one pair");
  for (const auto& s : k_in.simplices) {
    if (static_cast<int>(s.size()) > n1)
      throw HypothesisError("DimensionTooHigh: complex dimension exceeds pair count - 1");
  }
  for (int i = 0; i < n1; ++i) {
    Point w;
    if (!regions_disjoint(pairs[i].first, pairs[i].second, &w)) {
      throw HypothesisError("PairsNotDisjoint: pair " + std::to_string(i + 1) + " meets at " +
                            point_str(w));
    }
  }
  // pairs must live inside |K|
  Region carrier(k_in.dim);
  for (size_t i = 0; i < k_in.simplices.size(); ++i)
    carrier.add(k_in.geom(static_cast<int>(i)).to_polytope(k_in.dim));
  for (int i = 0; i < n1; ++i) {
    Point w;
    if (!region_covered(pairs[i].first, carrier, &w) ||
        !region_covered(pairs[i].second, carrier, &w))
      throw HypothesisError("enlarge pair " + std::to_string(i + 1) + " leaves the complex at " +
                            point_str(w));
  }

  std::vector<const Region*> anchors;
  for (int i = 0; i < n1; ++i) anchors.push_back(&pairs[i].first);
  for (int i = 0; i < n1; ++i) anchors.push_back(&pairs[i].second);
  const int acount = 2 * n1;

  // (1) refine so every anchor is a union of simplices
  std::vector<Hyperplane> cuts;
  for (int a = 0; a < acount; ++a)
    for (const auto& h : anchors[a]->boundary_hyperplanes()) cuts.push_back(h);
  SimplicialComplex k = refine_by_hyperplanes(k_in, dedupe_hyperplanes(std::move(cuts)));

  EnlargeResult res;
  auto in_z = [&](const Point& p) {
    for (int a = 0; a < acount; ++a)
      if (anchors[a]->contains(p)) return true;
    return false;
  };

  // (1b) star faces that would break trace exactness (all vertices anchored
  // in a set the face itself leaves, inside Z) and fully anchored simplices
  // whose corner images pin the center.
  for (int round = 0;; ++round) {
    if (round > 256) throw InternalError("enlarge: stellar repair did not stabilize");
    std::set<std::vector<int>> offenders;
    std::vector<std::vector<bool>> vanchor(k.verts.size(), std::vector<bool>(acount));
    for (size_t v = 0; v < k.verts.size(); ++v)
      for (int a = 0; a < acount; ++a) vanchor[v][a] = anchors[a]->contains(k.verts[v]);
    std::set<std::vector<int>> faces;
    for (const auto& s : k.simplices) {
      size_t m = s.size();
      for (size_t mask = 1; mask < (1u << m); ++mask) {
        if (__builtin_popcount(static_cast<unsigned>(mask)) < 2) continue;
        std::vector<int> f;
        for (size_t j = 0; j < m; ++j)
          if ((mask >> j) & 1) f.push_back(s[j]);
        faces.insert(std::move(f));
      }
    }
    for (const auto& f : faces) {
      Point bary = face_barycenter(k, f);
      if (!in_z(bary)) continue;
      for (int a = 0; a < acount; ++a) {
        bool all = true;
        for (int v : f)
          if (!vanchor[v][a]) {
            all = false;
            break;
          }
        if (all && !anchors[a]->contains(bary)) {
          offenders.insert(f);
          break;
        }
      }
    }
    for (const auto& s : k.simplices) {
      bool fully = true;
      std::vector<Point> corners;
      for (int v : s) {
        Point val(n1);
        for (int i = 0; i < n1 && fully; ++i) {
          if (vanchor[v][i])
            val[i] = 0;
          else if (vanchor[v][n1 + i])
            val[i] = 1;
          else
            fully = false;
        }
        if (!fully) break;
        corners.push_back(std::move(val));
      }
      if (!fully) continue;
      if (center_in_hull(corners, n1)) offenders.insert(s);
    }
    if (offenders.empty()) break;
    // star the larger faces first; stale faces inside already-starred
    // simplices become no-ops and are rescanned next round
    std::vector<std::vector<int>> order(offenders.begin(), offenders.end());
    std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
      if (a.size() != b.size()) return a.size() > b.size();
      return a < b;
    });
    for (const auto& f : order) {
      star_face(k, f);
      ++res.report.stellar_stars;
    }
  }

  // (2) seeded anchored field with free values strictly inside (0,1)
  std::vector<std::vector<bool>> vanchor(k.verts.size(), std::vector<bool>(acount));
  for (size_t v = 0; v < k.verts.size(); ++v)
    for (int a = 0; a < acount; ++a) vanchor[v][a] = anchors[a]->contains(k.verts[v]);

  std::vector<Point> field(k.verts.size(), Point(n1));
  const int kMaxRetries = 16;
  bool clean = false;
  for (int attempt = 0; attempt < kMaxRetries && !clean; ++attempt) {
    std::uint64_t derived = Rng::derive(seed, static_cast<std::uint64_t>(attempt));
    Rng rng(derived);
    for (size_t v = 0; v < k.verts.size(); ++v) {
      for (int i = 0; i < n1; ++i) {
        if (vanchor[v][i])
          field[v][i] = 0;
        else if (vanchor[v][n1 + i])
          field[v][i] = 1;
        else
          field[v][i] = rng.unit_free_value();
      }
    }
    // (3) exact apex exclusion, simplex by simplex
    clean = true;
    for (const auto& s : k.simplices) {
      bool constant_coord = false;
      for (int i = 0; i < n1 && !constant_coord; ++i) {
        bool all0 = true, all1 = true;
        for (int v : s) {
          if (field[v][i] != 0) all0 = false;
          if (field[v][i] != 1) all1 = false;
        }
        constant_coord = all0 || all1;
      }
      if (constant_coord) continue;  // that coordinate never reaches 1/2
      std::vector<Point> pts;
      for (int v : s) pts.push_back(field[v]);
      if (center_in_hull(pts, n1)) {
        clean = false;
        break;
      }
    }
    res.report.retries_used = attempt + 1;
    res.seed_used = derived;
  }
  if (!clean)
    throw InternalError("CenterUnavoidable: retry budget exhausted; anchors force the center");
  res.report.apex_excluded = true;

  // (4) cone preimages; simplices inside Z only reproduce their anchors
  res.a.assign(n1, Region(k.dim));
  res.b.assign(n1, Region(k.dim));
  for (int i = 0; i < n1; ++i) {
    for (const auto& p : pairs[i].first.pieces())
      if (!p.is_empty()) res.a[i].add(p);
    for (const auto& p : pairs[i].second.pieces())
      if (!p.is_empty()) res.b[i].add(p);
  }
  std::vector<Polytope> cones0, cones1;
  for (int i = 0; i < n1; ++i) {
    cones0.push_back(cone_polytope(n1, i, 0));
    cones1.push_back(cone_polytope(n1, i, 1));
  }
  struct SimplexData {
    Polytope poly;
    AffineMap g;
    bool in_z = false;
    int adim = 0;
  };
  std::vector<SimplexData> sdata;
  sdata.reserve(k.simplices.size());
  for (size_t si = 0; si < k.simplices.size(); ++si) {
    SimplexData d;
    Simplex geo = k.geom(static_cast<int>(si));
    d.poly = geo.to_polytope(k.dim);
    d.adim = static_cast<int>(k.simplices[si].size()) - 1;
    d.in_z = in_z(geo.barycenter());
    std::vector<Point> xs, ys;
    for (int v : k.simplices[si]) {
      xs.push_back(k.verts[v]);
      ys.push_back(field[v]);
    }
    d.g = AffineMap::fit(xs, ys);
    sdata.push_back(std::move(d));
  }
  // Pieces of dimension below the simplex are boundary slivers between
  // neighboring cone preimages; the full-dimensional pieces already cover
  // the simplex and the traces live in the anchors, so slivers are dropped.
  for (size_t si = 0; si < k.simplices.size(); ++si) {
    const auto& d = sdata[si];
    if (d.in_z) continue;
    for (int i = 0; i < n1; ++i) {
      for (int side : {0, 1}) {
        const Polytope& cone = side == 0 ? cones0[i] : cones1[i];
        Polytope piece = d.poly;
        for (const auto& h : cone.halfspaces()) piece.add(d.g.pullback(h));
        if (piece.is_empty()) continue;
        if (piece.affine_dim() < d.adim) continue;
        piece.minimize();
        (side == 0 ? res.a[i] : res.b[i]).add(std::move(piece));
      }
    }
  }
  for (int i = 0; i < n1; ++i) {
    simplify_region(res.a[i]);
    simplify_region(res.b[i]);
  }

  // (5) exact check suite; construction bugs surface here, not downstream
  res.report.simplex_count = k.simplices.size();
  for (int i = 0; i < n1; ++i) {
    Point w;
    if (!regions_disjoint(res.a[i], res.b[i], &w))
      throw InternalError("enlarge check failed: A" + std::to_string(i + 1) + " meets B" +
                          std::to_string(i + 1) + " at " + point_str(w));
  }
  res.report.pairwise_disjoint = true;
  for (int i = 0; i < n1; ++i) {
    for (int a = 0; a < acount; ++a) {
      Point w;
      Region za = region_intersect(res.a[i], *anchors[a]);
      if (!region_covered(za, pairs[i].first, &w))
        throw InternalError("enlarge trace failed for A" + std::to_string(i + 1) + " at " +
                            point_str(w));
      Region zb = region_intersect(res.b[i], *anchors[a]);
      if (!region_covered(zb, pairs[i].second, &w))
        throw InternalError("enlarge trace failed for B" + std::to_string(i + 1) + " at " +
                            point_str(w));
    }
  }
  res.report.traces_exact = true;
  // cover: refine each simplex by its own piece boundaries and probe the
  // interior point of every refinement cell
  for (size_t si = 0; si < k.simplices.size(); ++si) {
    const auto& d = sdata[si];
    std::vector<Cell> cells{Cell(k.geom(static_cast<int>(si)).verts)};
    std::sort(cells[0].begin(), cells[0].end(), PointLess{});
    if (!d.in_z) {
      std::vector<Hyperplane> hs;
      for (int i = 0; i < n1; ++i) {
        for (int side : {0, 1}) {
          const Polytope& cone = side == 0 ? cones0[i] : cones1[i];
          for (const auto& h : cone.halfspaces()) {
            HalfSpace pb = d.g.pullback(h);
            bool zero = true;
            for (const auto& x : pb.normal)
              if (x != 0) zero = false;
            if (!zero) hs.emplace_back(pb);
          }
        }
      }
      for (const auto& h : dedupe_hyperplanes(std::move(hs))) {
        std::vector<Cell> next;
        for (const auto& c : cells)
          for (auto& part : split_cell(c, h)) next.push_back(std::move(part));
        cells = std::move(next);
      }
    }
    for (const auto& c : cells) {
      Point probe = average_of(c);
      bool covered = false;
      for (int i = 0; i < n1 && !covered; ++i)
        covered = res.a[i].contains(probe) || res.b[i].contains(probe);
      if (!covered) throw InternalError("enlarge cover gap at " + point_str(probe));
    }
  }
  res.report.cover_certified = true;

  res.refined = std::move(k);
  res.field = std::move(field);
  return res;
}

}  // namespace fpfcolor
