#include "fpfcolor/map_model.hpp"

#include <algorithm>
#include <sstream>

#include "fpfcolor/errors.hpp"

namespace fpfcolor {

Point GridSpec::vertex_world(const LatticeIndex& v) const {
  Point p(dim);
  for (int i = 0; i < dim; ++i) {
    p[i] = origin[i] + spacing * Rational(v[i]);
    p[i].canonicalize();
  }
  return p;
}

namespace {

std::string idx_str(const LatticeIndex& v) {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) os << ",";
    os << v[i];
  }
  os << "]";
  return os.str();
}

// corner offsets {0,1}^n in lex order
std::vector<LatticeIndex> corner_offsets(int n) {
  std::vector<LatticeIndex> out;
  for (long mask = 0; mask < (1L << n); ++mask) {
    LatticeIndex off(n);
    for (int i = 0; i < n; ++i) off[i] = (mask >> (n - 1 - i)) & 1;
    out.push_back(std::move(off));
  }
  return out;
}

LatticeIndex add_idx(const LatticeIndex& a, const LatticeIndex& b) {
  LatticeIndex c(a.size());
  for (size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

}  // namespace

void SampledMap::validate() const {
  if (grid.dim < 1) throw InputError("NonGridAlignedDomain: dimension must be >= 1");
  if (grid.spacing <= 0) throw InputError("BadRational: grid spacing must be positive");
  if (static_cast<int>(grid.origin.size()) != grid.dim)
    throw InputError("NonGridAlignedDomain: origin has wrong dimension");
  if (cells.empty()) throw InputError("NonGridAlignedDomain: empty domain");
  for (const auto& c : cells)
    if (static_cast<int>(c.size()) != grid.dim)
      throw InputError("NonGridAlignedDomain: cell index " + idx_str(c) + " has wrong arity");
  for (const auto& [v, val] : values) {
    if (static_cast<int>(v.size()) != grid.dim || static_cast<int>(val.size()) != grid.dim)
      throw InputError("NonGridAlignedDomain: vertex value " + idx_str(v) + " has wrong arity");
  }
  for (const auto& c : cells) {
    for (const auto& off : corner_offsets(grid.dim)) {
      LatticeIndex v = add_idx(c, off);
      if (!values.count(v))
        throw InputError("MissingVertexValue: cell " + idx_str(c) + " vertex " + idx_str(v));
    }
  }
}

bool SampledMap::cell_in_domain(const LatticeIndex& c) const {
  return std::binary_search(cells.begin(), cells.end(), c);
}

bool SampledMap::vertex_in_domain(const LatticeIndex& v) const {
  // v is a vertex of some domain cell iff some cell c with c <= v <= c+1 is present
  int n = grid.dim;
  for (const auto& off : corner_offsets(n)) {
    LatticeIndex c(n);
    for (int i = 0; i < n; ++i) c[i] = v[i] - off[i];
    if (cell_in_domain(c)) return true;
  }
  return false;
}

const std::vector<DomainSimplex>& SampledMap::simplices() const {
  if (simplices_) return *simplices_;
  auto out = std::make_shared<std::vector<DomainSimplex>>();
  int n = grid.dim;
  std::vector<Simplex> local = kuhn_simplices(n);
  std::vector<LatticeIndex> sorted = cells;
  std::sort(sorted.begin(), sorted.end());
  int id = 0;
  for (const auto& c : sorted) {
    for (size_t pi = 0; pi < local.size(); ++pi) {
      DomainSimplex ds;
      ds.id = id++;
      ds.cell = c;
      ds.perm = static_cast<int>(pi);
      std::vector<Point> xs, ys;
      for (const auto& lv : local[pi].verts) {
        LatticeIndex v(c);
        for (int i = 0; i < n; ++i) v[i] += lv[i].get_num().get_si();
        Point w = grid.vertex_world(v);
        auto it = values.find(v);
        if (it == values.end())
          throw InputError("MissingVertexValue: vertex " + idx_str(v));
        xs.push_back(w);
        ys.push_back(it->second);
        ds.world.verts.push_back(std::move(w));
      }
      ds.map = AffineMap::fit(xs, ys);
      ds.poly = ds.world.to_polytope(n);
      Point lo = ys[0], hi = ys[0];
      for (const auto& y : ys)
        for (int i = 0; i < n; ++i) {
          if (y[i] < lo[i]) lo[i] = y[i];
          if (y[i] > hi[i]) hi[i] = y[i];
        }
      ds.image_bounds = {std::move(lo), std::move(hi)};
      out->push_back(std::move(ds));
    }
  }
  simplices_ = std::move(out);
  return *simplices_;
}

Region SampledMap::domain_region() const {
  Region r(grid.dim);
  for (const auto& s : simplices()) r.add(s.poly);
  return r;
}

std::pair<Point, Point> SampledMap::domain_bounds() const {
  int n = grid.dim;
  LatticeIndex lo = cells[0], hi = cells[0];
  for (const auto& c : cells)
    for (int i = 0; i < n; ++i) {
      lo[i] = std::min(lo[i], c[i]);
      hi[i] = std::max(hi[i], c[i] + 1);
    }
  return {grid.vertex_world(lo), grid.vertex_world(hi)};
}

Point SampledMap::eval(const Point& x) const {
  int n = grid.dim;
  // locate candidate cells around x
  std::vector<long> base(n);
  std::vector<bool> on_lattice(n, false);
  for (int i = 0; i < n; ++i) {
    Rational t = (x[i] - grid.origin[i]) / grid.spacing;
    t.canonicalize();
    base[i] = floor_long(t);
    on_lattice[i] = (t == Rational(base[i]));
  }
  for (long mask = 0; mask < (1L << n); ++mask) {
    LatticeIndex c(n);
    bool valid = true;
    for (int i = 0; i < n; ++i) {
      bool shift = (mask >> i) & 1;
      if (shift && !on_lattice[i]) {
        valid = false;
        break;
      }
      c[i] = base[i] - (shift ? 1 : 0);
    }
    if (!valid || !cell_in_domain(c)) continue;
    // local coordinates in [0,1]^n
    Point u(n);
    for (int i = 0; i < n; ++i) {
      u[i] = (x[i] - grid.origin[i]) / grid.spacing - Rational(c[i]);
      u[i].canonicalize();
    }
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      int cmp = mpq_cmp(u[a].get_mpq_t(), u[b].get_mpq_t());
      if (cmp != 0) return cmp > 0;
      return a < b;
    });
    // barycentric weights along the Kuhn vertex chain
    std::vector<Rational> lambda(n + 1);
    lambda[0] = Rational(1) - u[order[0]];
    for (int k = 1; k < n; ++k) lambda[k] = u[order[k - 1]] - u[order[k]];
    lambda[n] = u[order[n - 1]];
    Point acc(n, Rational(0));
    LatticeIndex v = c;
    for (int k = 0; k <= n; ++k) {
      if (k > 0) v[order[k - 1]] += 1;
      auto it = values.find(v);
      if (it == values.end()) throw InputError("MissingVertexValue: vertex " + idx_str(v));
      for (int i = 0; i < n; ++i) acc[i] += lambda[k] * it->second[i];
    }
    for (auto& a : acc) a.canonicalize();
    return acc;
  }
  throw InputError("evaluation point " + point_str(x) + " is outside the domain");
}

SampledMap SampledMap::subdivided() const {
  SampledMap out;
  out.grid.dim = grid.dim;
  out.grid.spacing = grid.spacing / 2;
  out.grid.spacing.canonicalize();
  out.grid.origin = grid.origin;
  int n = grid.dim;
  for (const auto& c : cells) {
    for (long mask = 0; mask < (1L << n); ++mask) {
      LatticeIndex child(n);
      for (int i = 0; i < n; ++i) child[i] = 2 * c[i] + ((mask >> i) & 1);
      out.cells.push_back(std::move(child));
    }
  }
  std::sort(out.cells.begin(), out.cells.end());
  out.cells.erase(std::unique(out.cells.begin(), out.cells.end()), out.cells.end());
  for (const auto& c : out.cells) {
    for (const auto& off : corner_offsets(n)) {
      LatticeIndex v = add_idx(c, off);
      if (out.values.count(v)) continue;
      out.values.emplace(v, eval(out.grid.vertex_world(v)));
    }
  }
  return out;
}

std::pair<Point, Point> SampledMap::ambient_box() const {
  int n = grid.dim;
  auto [lo, hi] = domain_bounds();
  for (const auto& [v, val] : values) {
    (void)v;
    for (int i = 0; i < n; ++i) {
      if (val[i] < lo[i]) lo[i] = val[i];
      if (val[i] > hi[i]) hi[i] = val[i];
    }
  }
  Point blo(n), bhi(n);
  for (int i = 0; i < n; ++i) {
    Rational tlo = (lo[i] - grid.origin[i]) / grid.spacing;
    Rational thi = (hi[i] - grid.origin[i]) / grid.spacing;
    blo[i] = grid.origin[i] + grid.spacing * Rational(floor_long(tlo) - 1);
    bhi[i] = grid.origin[i] + grid.spacing * Rational(ceil_long(thi) + 1);
    blo[i].canonicalize();
    bhi[i].canonicalize();
  }
  return {blo, bhi};
}

// ---------------------------------------------------------------------------
// certification

namespace {

struct SimplexMargin {
  bool ok = false;
  SimplexWitness witness;
  Rational margin;
};

SimplexMargin best_witness(const SampledMap& m, const DomainSimplex& s) {
  int n = m.dim();
  SimplexMargin out;
  for (int i = 0; i < n; ++i) {
    for (int sign : {+1, -1}) {
      Rational worst;
      bool first = true;
      for (size_t k = 0; k < s.world.verts.size(); ++k) {
        const Point& w = s.world.verts[k];
        Point fv = s.map.apply(w);
        Rational diff = Rational(sign) * (fv[i] - w[i]);
        if (first || diff < worst) {
          worst = diff;
          first = false;
        }
      }
      if (worst > 0 && (!out.ok || worst > out.margin)) {
        out.ok = true;
        out.margin = worst;
        out.witness = {i, sign};
      }
    }
  }
  return out;
}

}  // namespace

CertifyResult certify_fpf(const SampledMap& m, int max_subdiv) {
  SampledMap cur = m;
  for (int depth = 0;; ++depth) {
    const auto& simp = cur.simplices();
    std::vector<SimplexWitness> wit(simp.size());
    std::vector<int> offenders;
    Rational delta;
    bool first = true;
    for (const auto& s : simp) {
      SimplexMargin sm = best_witness(cur, s);
      if (!sm.ok) {
        offenders.push_back(s.id);
        continue;
      }
      wit[s.id] = sm.witness;
      if (first || sm.margin < delta) {
        delta = sm.margin;
        first = false;
      }
    }
    if (offenders.empty()) {
      FpfCertificate cert;
      cert.delta = delta;
      cert.witnesses = std::move(wit);
      cert.depth = depth;
      return {std::move(cur), std::move(cert)};
    }
    if (depth >= max_subdiv) {
      std::ostringstream os;
      os << "NotCertifiablyFpf: " << offenders.size() << " simplex(es) admit no sign witness"
         << " after " << depth << " subdivision(s)";
      throw NotCertifiablyFpf(os.str(), offenders, depth);
    }
    cur = cur.subdivided();
  }
}

// ---------------------------------------------------------------------------
// images and preimages

Region image_region_clipped(const SampledMap& m, const Region& f) {
  Region out(m.dim());
  for (const auto& piece : f.pieces()) {
    if (piece.is_empty()) continue;
    for (const auto& s : m.simplices()) {
      if (bounds_disjoint(piece.bounds(), s.poly.bounds())) continue;
      Polytope q = piece.intersect(s.poly);
      if (q.is_empty()) continue;
      out.add(affine_image(q, s.map));
    }
  }
  return out;
}

Region image_region(const SampledMap& m, const Region& f) {
  std::vector<Polytope> domain;
  for (const auto& s : m.simplices()) domain.push_back(s.poly);
  for (const auto& piece : f.pieces()) {
    if (piece.is_empty()) continue;
    Point w;
    if (!piece_covered(piece, domain, &w))
      throw InputError("PieceOutsideDomain: witness " + point_str(w));
  }
  return image_region_clipped(m, f);
}

Region preimage_region_in(const SampledMap& m, const Region& domain, const Region& r) {
  Region out(m.dim());
  for (const auto& dp : domain.pieces()) {
    if (dp.is_empty()) continue;
    for (const auto& s : m.simplices()) {
      if (bounds_disjoint(dp.bounds(), s.poly.bounds())) continue;
      Polytope base = dp.intersect(s.poly);
      if (base.is_empty()) continue;
      for (const auto& q : r.pieces()) {
        if (q.is_empty()) continue;
        if (bounds_disjoint(s.image_bounds, q.bounds())) continue;
        Polytope cand = base;
        for (const auto& h : q.halfspaces()) cand.add(s.map.pullback(h));
        if (!cand.is_empty()) out.add(std::move(cand));
      }
    }
  }
  return out;
}

Region preimage_region(const SampledMap& m, const Region& r) {
  return preimage_region_in(m, m.domain_region(), r);
}

// ---------------------------------------------------------------------------
// cylinder lift

LiftResult lift_cylinder(const SampledMap& f, const SampledMap& h,
                         const std::map<LatticeIndex, Rational>& phi, long r_cells,
                         std::optional<Rational> truncation) {
  if (f.grid.dim != h.grid.dim || f.grid.spacing != h.grid.spacing ||
      point_cmp(f.grid.origin, h.grid.origin) != 0)
    throw InputError("extension grid must match the base grid");
  if (r_cells < 1) throw InputError("lift needs at least one r-cell");
  for (const auto& c : f.cells)
    if (!h.cell_in_domain(c))
      throw InputError("extension domain must contain the base domain");
  int n = f.grid.dim;
  // h agrees with f on X, vertex-wise
  for (const auto& [v, val] : f.values) {
    if (!f.vertex_in_domain(v)) continue;
    auto it = h.values.find(v);
    if (it == h.values.end() || point_cmp(it->second, val) != 0)
      throw InputError("ExtensionDisagreesOnX: vertex " + idx_str(v));
  }
  // phi >= 0 with vertex-exact zero set X
  Rational phi_max(0);
  for (const auto& c : h.cells) {
    for (const auto& off : corner_offsets(n)) {
      LatticeIndex v = add_idx(c, off);
      auto it = phi.find(v);
      if (it == phi.end()) throw InputError("MissingVertexValue: potential at " + idx_str(v));
      const Rational& pv = it->second;
      bool in_x = f.vertex_in_domain(v);
      if (pv < 0) throw InputError("potential must be nonnegative at " + idx_str(v));
      if (in_x && pv != 0)
        throw InputError("potential must vanish on domain vertex " + idx_str(v));
      if (!in_x && pv == 0)
        throw InputError("PotentialVanishesOffX: vertex " + idx_str(v));
      if (pv > phi_max) phi_max = pv;
    }
  }
  Rational top = Rational(r_cells) * h.grid.spacing + phi_max;
  Rational T = truncation.value_or(top);
  if (top > T)
    throw OverflowError("TruncationOverflow: r + phi reaches " + rational_str(top) +
                        " > T = " + rational_str(T));

  LiftResult out;
  out.truncation = T;
  SampledMap& g = out.lifted;
  g.grid.dim = n + 1;
  g.grid.spacing = h.grid.spacing;
  g.grid.origin = h.grid.origin;
  g.grid.origin.push_back(Rational(0));
  for (const auto& c : h.cells) {
    for (long k = 0; k < r_cells; ++k) {
      LatticeIndex lc = c;
      lc.push_back(k);
      g.cells.push_back(std::move(lc));
    }
  }
  std::sort(g.cells.begin(), g.cells.end());
  for (const auto& c : h.cells) {
    for (const auto& off : corner_offsets(n)) {
      LatticeIndex v = add_idx(c, off);
      const Point& hv = h.values.at(v);
      const Rational& pv = phi.at(v);
      for (long k = 0; k <= r_cells; ++k) {
        LatticeIndex lv = v;
        lv.push_back(k);
        Point val = hv;
        Rational r = Rational(k) * h.grid.spacing + pv;
        r.canonicalize();
        val.push_back(std::move(r));
        g.values.emplace(std::move(lv), std::move(val));
      }
    }
  }
  // flag extension simplices that admit no sign witness yet touch X
  Region x_region = f.domain_region();
  for (const auto& s : h.simplices()) {
    SimplexMargin sm = best_witness(h, s);
    if (sm.ok) continue;
    if (region_meet_witness(x_region, Region::from_polytope(s.poly))) {
      out.fixed_simplices_clear = false;
      out.risky_simplices.push_back(s.id);
    }
  }
  return out;
}

}  // namespace fpfcolor
