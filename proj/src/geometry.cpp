#include "fpfcolor/geometry.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <set>
#include <sstream>

#include "fpfcolor/errors.hpp"

namespace fpfcolor {

// ---------------------------------------------------------------------------
// halfspaces

Rational HalfSpace::eval(const Point& x) const {
  Rational acc = -offset;
  for (size_t i = 0; i < normal.size(); ++i) acc += normal[i] * x[i];
  return acc;
}

namespace {

// Positive scale factor turning (normal, offset) into coprime integers.
void integer_scale(Point& normal, Rational& offset) {
  mpz_class den_lcm = 1;
  for (const auto& v : normal) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), v.get_den_mpz_t());
  mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), offset.get_den_mpz_t());
  mpz_class num_gcd = 0;
  auto fold = [&](const Rational& v) {
    mpz_class scaled = v.get_num() * (den_lcm / v.get_den());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), scaled.get_mpz_t());
  };
  for (const auto& v : normal) fold(v);
  fold(offset);
  if (num_gcd == 0) num_gcd = 1;
  Rational scale(den_lcm, num_gcd);
  scale.canonicalize();
  for (auto& v : normal) {
    v *= scale;
    v.canonicalize();
  }
  offset *= scale;
  offset.canonicalize();
}

}  // namespace

void HalfSpace::canonicalize() { integer_scale(normal, offset); }

std::string HalfSpace::key() const {
  std::ostringstream os;
  for (const auto& v : normal) os << v.get_str() << ",";
  os << "|" << offset.get_str();
  return os.str();
}

HalfSpace HalfSpace::flipped() const {
  HalfSpace h;
  h.normal.reserve(normal.size());
  for (const auto& v : normal) h.normal.push_back(-v);
  h.offset = -offset;
  return h;
}

Rational Hyperplane::eval(const Point& x) const {
  Rational acc = -offset;
  for (size_t i = 0; i < normal.size(); ++i) acc += normal[i] * x[i];
  return acc;
}

void Hyperplane::canonicalize() {
  integer_scale(normal, offset);
  for (const auto& v : normal) {
    if (v > 0) return;
    if (v < 0) break;
  }
  for (auto& v : normal) v = -v;
  offset = -offset;
}

std::string Hyperplane::key() const {
  std::ostringstream os;
  for (const auto& v : normal) os << v.get_str() << ",";
  os << "=" << offset.get_str();
  return os.str();
}

// ---------------------------------------------------------------------------
// linear algebra

namespace {

// Row echelon reduction in place; returns pivot columns.
std::vector<int> echelon(Matrix& m) {
  std::vector<int> pivots;
  size_t rows = m.size();
  if (rows == 0) return pivots;
  size_t cols = m[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t sel = rows;
    for (size_t i = r; i < rows; ++i)
      if (m[i][c] != 0) {
        sel = i;
        break;
      }
    if (sel == rows) continue;
    std::swap(m[r], m[sel]);
    Rational p = m[r][c];
    for (size_t j = c; j < cols; ++j) m[r][j] /= p;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rational f = m[i][c];
      for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(static_cast<int>(c));
    ++r;
  }
  return pivots;
}

}  // namespace

int matrix_rank(Matrix m) { return static_cast<int>(echelon(m).size()); }

std::optional<Point> solve_square(Matrix a, Point b) {
  size_t n = a.size();
  for (size_t i = 0; i < n; ++i) a[i].push_back(b[i]);
  std::vector<int> piv = echelon(a);
  if (piv.size() != n) return std::nullopt;
  for (size_t i = 0; i < n; ++i)
    if (piv[i] != static_cast<int>(i)) return std::nullopt;  // singular in x-columns
  Point x(n);
  for (size_t i = 0; i < n; ++i) x[i] = a[i][n];
  return x;
}

std::vector<Point> nullspace(Matrix m) {
  if (m.empty()) return {};
  size_t cols = m[0].size();
  std::vector<int> piv = echelon(m);
  std::vector<bool> is_pivot(cols, false);
  for (int c : piv) is_pivot[c] = true;
  std::vector<Point> basis;
  for (size_t fc = 0; fc < cols; ++fc) {
    if (is_pivot[fc]) continue;
    Point v(cols, Rational(0));
    v[fc] = 1;
    for (size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -m[i][fc];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Matrix> invert(Matrix a) {
  size_t n = a.size();
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) a[i].push_back(i == j ? Rational(1) : Rational(0));
  }
  std::vector<int> piv = echelon(a);
  if (piv.size() != n) return std::nullopt;
  for (size_t i = 0; i < n; ++i)
    if (piv[i] != static_cast<int>(i)) return std::nullopt;
  Matrix inv(n, Point(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) inv[i][j] = a[i][n + j];
  return inv;
}

// ---------------------------------------------------------------------------
// polytopes

Polytope Polytope::box(const Point& lo, const Point& hi) {
  int n = static_cast<int>(lo.size());
  Polytope p(n);
  for (int i = 0; i < n; ++i) {
    Point e(n, Rational(0));
    e[i] = 1;
    p.add(HalfSpace(e, hi[i]));
    Point ne(n, Rational(0));
    ne[i] = -1;
    p.add(HalfSpace(ne, -lo[i]));
  }
  return p;
}

Polytope Polytope::make_empty(int dim) {
  Polytope p(dim);
  p.force_empty_ = true;
  p.empty_ = true;
  return p;
}

void Polytope::invalidate() const {
  empty_.reset();
  verts_.reset();
  bounds_.reset();
}

void Polytope::add(HalfSpace h) {
  invalidate();
  bool zero = true;
  for (const auto& v : h.normal)
    if (v != 0) {
      zero = false;
      break;
    }
  if (zero) {
    if (h.offset < 0) {
      force_empty_ = true;
      empty_ = true;
    }
    return;  // 0.x <= b with b >= 0 is vacuous
  }
  h.canonicalize();
  hs_.push_back(std::move(h));
}

void Polytope::add_all(const std::vector<HalfSpace>& hs) {
  for (const auto& h : hs) add(h);
}

bool Polytope::contains(const Point& x) const {
  if (force_empty_) return false;
  for (const auto& h : hs_)
    if (h.eval(x) > 0) return false;
  return true;
}

namespace {

void rows_of(const Polytope& p, std::vector<Point>* a, std::vector<Rational>* b) {
  a->clear();
  b->clear();
  for (const auto& h : p.halfspaces()) {
    a->push_back(h.normal);
    b->push_back(h.offset);
  }
}

}  // namespace

bool Polytope::is_empty() const {
  if (force_empty_) return true;
  if (!empty_) {
    std::vector<Point> a;
    std::vector<Rational> b;
    rows_of(*this, &a, &b);
    if (a.empty())
      empty_ = false;
    else
      empty_ = !lp_feasible_point(a, b).has_value();
  }
  return *empty_;
}

std::optional<Point> Polytope::witness() const {
  if (force_empty_) return std::nullopt;
  std::vector<Point> a;
  std::vector<Rational> b;
  rows_of(*this, &a, &b);
  if (a.empty()) return Point(dim_, Rational(0));
  auto w = lp_feasible_point(a, b);
  empty_ = !w.has_value();
  return w;
}

LpResult Polytope::maximize(const Point& c) const {
  if (force_empty_) return {LpStatus::Infeasible, Rational(0), {}};
  std::vector<Point> a;
  std::vector<Rational> b;
  rows_of(*this, &a, &b);
  if (a.empty()) return lp_maximize({}, {}, c);
  return lp_maximize(a, b, c);
}

const std::vector<Point>& Polytope::vertices() const {
  if (verts_) return *verts_;
  std::vector<Point> out;
  if (!is_empty()) {
    size_t m = hs_.size();
    size_t d = static_cast<size_t>(dim_);
    std::vector<size_t> idx(d, 0);
    // enumerate d-subsets of rows
    std::vector<size_t> comb;
    std::function<void(size_t)> rec = [&](size_t start) {
      if (comb.size() == d) {
        Matrix a;
        Point b;
        for (size_t r : comb) {
          a.push_back(hs_[r].normal);
          b.push_back(hs_[r].offset);
        }
        auto x = solve_square(a, b);
        if (x && contains(*x)) out.push_back(*x);
        return;
      }
      for (size_t r = start; r + (d - comb.size()) <= m; ++r) {
        comb.push_back(r);
        rec(r + 1);
        comb.pop_back();
      }
    };
    if (d == 0) {
      out.push_back(Point{});
    } else {
      rec(0);
    }
    std::sort(out.begin(), out.end(), PointLess{});
    out.erase(std::unique(out.begin(), out.end(),
                          [](const Point& a, const Point& b) { return point_cmp(a, b) == 0; }),
              out.end());
    if (out.empty())
      throw InternalError("vertex enumeration found none; polytope unbounded or ill-formed");
  }
  verts_ = std::move(out);
  return *verts_;
}

const std::pair<Point, Point>& Polytope::bounds() const {
  if (bounds_) return *bounds_;
  Point lo(dim_), hi(dim_);
  for (int i = 0; i < dim_; ++i) {
    Point c(dim_, Rational(0));
    c[i] = 1;
    LpResult up = maximize(c);
    c[i] = -1;
    LpResult dn = maximize(c);
    if (up.status != LpStatus::Optimal || dn.status != LpStatus::Optimal)
      throw InternalError("bounds requested for empty or unbounded polytope");
    hi[i] = up.value;
    lo[i] = -dn.value;
  }
  bounds_ = std::make_pair(std::move(lo), std::move(hi));
  return *bounds_;
}

Point Polytope::rel_interior_point() const {
  const auto& vs = vertices();
  if (vs.empty()) throw InternalError("rel_interior_point of empty polytope");
  Point acc(dim_, Rational(0));
  for (const auto& v : vs)
    for (int i = 0; i < dim_; ++i) acc[i] += v[i];
  Rational inv(1, static_cast<long>(vs.size()));
  inv.canonicalize();
  for (auto& x : acc) {
    x *= inv;
    x.canonicalize();
  }
  return acc;
}

int Polytope::affine_dim() const {
  if (is_empty()) return -1;
  const auto& vs = vertices();
  if (vs.size() <= 1) return 0;
  Matrix diffs;
  for (size_t i = 1; i < vs.size(); ++i) {
    Point d(dim_);
    for (int j = 0; j < dim_; ++j) d[j] = vs[i][j] - vs[0][j];
    diffs.push_back(std::move(d));
  }
  return matrix_rank(std::move(diffs));
}

void Polytope::minimize() {
  if (force_empty_) {
    hs_.clear();
    return;
  }
  // dedupe by canonical key
  std::set<std::string> seen;
  std::vector<HalfSpace> rows;
  for (auto& h : hs_)
    if (seen.insert(h.key()).second) rows.push_back(std::move(h));
  hs_ = std::move(rows);
  invalidate();
  if (is_empty()) {
    force_empty_ = true;
    hs_.clear();
    empty_ = true;
    return;
  }
  // LP redundancy: row j redundant iff max of its normal over the others <= offset
  for (size_t j = 0; j < hs_.size() && hs_.size() > 1;) {
    std::vector<Point> a;
    std::vector<Rational> b;
    for (size_t i = 0; i < hs_.size(); ++i) {
      if (i == j) continue;
      a.push_back(hs_[i].normal);
      b.push_back(hs_[i].offset);
    }
    LpResult r = lp_maximize(a, b, hs_[j].normal);
    bool redundant = r.status == LpStatus::Optimal && r.value <= hs_[j].offset;
    if (redundant)
      hs_.erase(hs_.begin() + j);
    else
      ++j;
  }
  invalidate();
}

Polytope Polytope::intersect(const Polytope& other) const {
  Polytope out(dim_);
  out.force_empty_ = force_empty_ || other.force_empty_;
  if (!out.force_empty_) {
    out.hs_ = hs_;
    for (const auto& h : other.hs_) out.hs_.push_back(h);
  }
  return out;
}

bool Polytope::subset_of(const Polytope& other) const {
  if (is_empty()) return true;
  if (other.force_empty_) return false;
  for (const auto& h : other.hs_) {
    LpResult r = maximize(h.normal);
    if (r.status != LpStatus::Optimal) return false;  // unbounded in that direction
    if (r.value > h.offset) return false;
  }
  return true;
}

bool Polytope::same_set(const Polytope& other) const {
  return subset_of(other) && other.subset_of(*this);
}

std::string Polytope::key() const {
  std::vector<std::string> keys;
  if (force_empty_) return "<empty>";
  for (const auto& h : hs_) keys.push_back(h.key());
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  std::string out;
  for (auto& k : keys) {
    out += k;
    out += ";";
  }
  return out;
}

bool bounds_disjoint(const std::pair<Point, Point>& a, const std::pair<Point, Point>& b) {
  for (size_t i = 0; i < a.first.size(); ++i)
    if (a.second[i] < b.first[i] || b.second[i] < a.first[i]) return true;
  return false;
}

std::optional<Point> polytope_meet_witness(const Polytope& p, const Polytope& q) {
  if (p.is_empty() || q.is_empty()) return std::nullopt;
  return p.intersect(q).witness();
}

bool polytope_intersection_empty(const Polytope& p, const Polytope& q, Point* witness) {
  if (p.dim() != q.dim()) throw InputError("polytope dimension mismatch");
  auto w = polytope_meet_witness(p, q);
  if (w && witness) *witness = *w;
  return !w.has_value();
}

Rational polytope_distance_inf(const Polytope& p, const Polytope& q) {
  int n = p.dim();
  // variables (x, y, t)
  std::vector<Point> rows;
  std::vector<Rational> rhs;
  auto push_block = [&](const Polytope& poly, int offset) {
    for (const auto& h : poly.halfspaces()) {
      Point r(2 * n + 1, Rational(0));
      for (int i = 0; i < n; ++i) r[offset + i] = h.normal[i];
      rows.push_back(std::move(r));
      rhs.push_back(h.offset);
    }
  };
  push_block(p, 0);
  push_block(q, n);
  for (int i = 0; i < n; ++i) {
    Point r1(2 * n + 1, Rational(0));
    r1[i] = 1;
    r1[n + i] = -1;
    r1[2 * n] = -1;  // x_i - y_i <= t
    rows.push_back(r1);
    rhs.push_back(Rational(0));
    Point r2(2 * n + 1, Rational(0));
    r2[i] = -1;
    r2[n + i] = 1;
    r2[2 * n] = -1;
    rows.push_back(r2);
    rhs.push_back(Rational(0));
  }
  Point c(2 * n + 1, Rational(0));
  c[2 * n] = 1;
  LpResult r = lp_minimize(rows, rhs, c);
  if (r.status != LpStatus::Optimal)
    throw InternalError("distance LP not optimal (empty or unbounded input)");
  return r.value;
}

// ---------------------------------------------------------------------------
// affine maps

Point AffineMap::apply(const Point& x) const {
  Point y(c);
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < m[i].size(); ++j) y[i] += m[i][j] * x[j];
  return y;
}

AffineMap AffineMap::fit(const std::vector<Point>& xs, const std::vector<Point>& ys) {
  assert(!xs.empty() && xs.size() == ys.size());
  size_t din = xs[0].size();
  size_t dout = ys[0].size();
  std::vector<Point> sx = xs;
  std::vector<Point> sy = ys;
  if (sx.size() < din + 1) {
    // complete with constant extension along a complement basis
    Matrix diffs;
    for (size_t i = 1; i < sx.size(); ++i) {
      Point d(din);
      for (size_t j = 0; j < din; ++j) d[j] = sx[i][j] - sx[0][j];
      diffs.push_back(std::move(d));
    }
    if (diffs.empty()) diffs.push_back(Point(din, Rational(0)));
    for (const auto& v : nullspace(std::move(diffs))) {
      Point p = sx[0];
      for (size_t j = 0; j < din; ++j) p[j] += v[j];
      sx.push_back(std::move(p));
      sy.push_back(sy[0]);
      if (sx.size() == din + 1) break;
    }
  }
  if (sx.size() != din + 1)
    throw InternalError("affine fit: sample set has wrong affine rank");
  AffineMap f;
  f.m.assign(dout, Point(din, Rational(0)));
  f.c.assign(dout, Rational(0));
  Matrix a;
  for (size_t i = 0; i < sx.size(); ++i) {
    Point row = sx[i];
    row.push_back(Rational(1));
    a.push_back(std::move(row));
  }
  for (size_t o = 0; o < dout; ++o) {
    Point b(sx.size());
    for (size_t i = 0; i < sx.size(); ++i) b[i] = sy[i][o];
    auto sol = solve_square(a, b);
    if (!sol) throw InternalError("affine fit: degenerate sample set");
    for (size_t j = 0; j < din; ++j) f.m[o][j] = (*sol)[j];
    f.c[o] = (*sol)[din];
  }
  return f;
}

std::optional<AffineMap> AffineMap::inverse() const {
  if (dim_in() != dim_out()) return std::nullopt;
  auto minv = invert(m);
  if (!minv) return std::nullopt;
  AffineMap g;
  g.m = *minv;
  g.c.assign(c.size(), Rational(0));
  for (size_t i = 0; i < c.size(); ++i)
    for (size_t j = 0; j < c.size(); ++j) g.c[i] -= (*minv)[i][j] * c[j];
  return g;
}

HalfSpace AffineMap::pullback(const HalfSpace& h) const {
  // a.(Mx + c) <= b  ->  (M^T a).x <= b - a.c
  HalfSpace out;
  out.normal.assign(static_cast<size_t>(dim_in()), Rational(0));
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < m[i].size(); ++j) out.normal[j] += h.normal[i] * m[i][j];
  out.offset = h.offset;
  for (size_t i = 0; i < c.size(); ++i) out.offset -= h.normal[i] * c[i];
  return out;
}

Polytope affine_image(const Polytope& p, const AffineMap& f) {
  int dout = f.dim_out();
  if (p.is_empty()) return Polytope::make_empty(dout);
  auto inv = f.inverse();
  if (inv) {
    Polytope out(dout);
    for (const auto& h : p.halfspaces()) out.add(inv->pullback(h));
    return out;
  }
  std::vector<Point> img;
  for (const auto& v : p.vertices()) img.push_back(f.apply(v));
  return hull_of_points(dout, img);
}

// ---------------------------------------------------------------------------
// convex hull (brute force, exact)

Polytope hull_of_points(int dim, const std::vector<Point>& pts_in) {
  std::vector<Point> pts = pts_in;
  std::sort(pts.begin(), pts.end(), PointLess{});
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Point& a, const Point& b) { return point_cmp(a, b) == 0; }),
            pts.end());
  if (pts.empty()) return Polytope::make_empty(dim);
  Polytope out(dim);
  const Point& p0 = pts[0];
  Matrix diffs;
  for (size_t i = 1; i < pts.size(); ++i) {
    Point d(dim);
    for (int j = 0; j < dim; ++j) d[j] = pts[i][j] - p0[j];
    diffs.push_back(std::move(d));
  }
  if (diffs.empty()) diffs.push_back(Point(dim, Rational(0)));
  // affine-hull equalities from the nullspace of the difference span
  std::vector<Point> null = nullspace(diffs);
  for (const auto& v : null) {
    Rational b(0);
    for (int j = 0; j < dim; ++j) b += v[j] * p0[j];
    out.add(HalfSpace(v, b));
    Point nv(dim);
    for (int j = 0; j < dim; ++j) nv[j] = -v[j];
    out.add(HalfSpace(nv, -b));
  }
  Matrix reduce = diffs;
  std::vector<int> pivots = echelon(reduce);
  int r = static_cast<int>(pivots.size());
  if (r == 0) return out;  // single point: equalities pin it
  // local coordinates: project to the pivot columns
  auto local = [&](const Point& p) {
    Point t(r);
    for (int i = 0; i < r; ++i) t[i] = p[pivots[i]] - p0[pivots[i]];
    return t;
  };
  std::vector<Point> loc;
  loc.reserve(pts.size());
  for (const auto& p : pts) loc.push_back(local(p));
  size_t k = pts.size();
  std::vector<size_t> comb;
  std::set<std::string> seen;
  std::function<void(size_t)> rec = [&](size_t start) {
    if (comb.size() == static_cast<size_t>(r)) {
      std::vector<Point> ns;
      if (r == 1) {
        ns.push_back(Point{Rational(1)});
      } else {
        Matrix rows;
        for (size_t i = 1; i < comb.size(); ++i) {
          Point d(r);
          for (int j = 0; j < r; ++j) d[j] = loc[comb[i]][j] - loc[comb[0]][j];
          rows.push_back(std::move(d));
        }
        ns = nullspace(std::move(rows));
      }
      if (ns.size() != 1) return;  // subset not spanning a hyperplane in the hull
      const Point& u = ns[0];
      Rational b(0);
      for (int j = 0; j < r; ++j) b += u[j] * loc[comb[0]][j];
      int sign = 0;
      bool facet = true;
      for (size_t i = 0; i < k; ++i) {
        Rational s(0);
        for (int j = 0; j < r; ++j) s += u[j] * loc[i][j];
        s -= b;
        if (s == 0) continue;
        int si = s > 0 ? 1 : -1;
        if (sign == 0)
          sign = si;
        else if (sign != si) {
          facet = false;
          break;
        }
      }
      if (!facet) return;
      if (sign == 0) sign = 1;
      // points satisfy u.loc <= b when sign < 0 and u.loc >= b when sign > 0;
      // lift to ambient coordinates on the pivot axes
      Rational factor(-sign);
      HalfSpace h;
      h.normal.assign(dim, Rational(0));
      for (int j = 0; j < r; ++j) h.normal[pivots[j]] = factor * u[j];
      h.offset = factor * b;
      for (int j = 0; j < r; ++j) h.offset += h.normal[pivots[j]] * p0[pivots[j]];
      h.canonicalize();
      if (seen.insert(h.key()).second) out.add(h);
      return;
    }
    for (size_t i = start; i + (r - comb.size()) <= k; ++i) {
      comb.push_back(i);
      rec(i + 1);
      comb.pop_back();
    }
  };
  rec(0);
  return out;
}

// ---------------------------------------------------------------------------
// simplices

Point Simplex::barycenter() const {
  assert(!verts.empty());
  Point acc(verts[0].size(), Rational(0));
  for (const auto& v : verts)
    for (size_t i = 0; i < v.size(); ++i) acc[i] += v[i];
  Rational inv(1, static_cast<long>(verts.size()));
  inv.canonicalize();
  for (auto& x : acc) {
    x *= inv;
    x.canonicalize();
  }
  return acc;
}

Rational Simplex::volume() const {
  size_t n = verts.empty() ? 0 : verts[0].size();
  if (verts.size() != n + 1) return Rational(0);
  Matrix m;
  for (size_t i = 1; i < verts.size(); ++i) {
    Point d(n);
    for (size_t j = 0; j < n; ++j) d[j] = verts[i][j] - verts[0][j];
    m.push_back(std::move(d));
  }
  // determinant by fraction-free elimination on a copy
  Rational det(1);
  for (size_t c = 0; c < n; ++c) {
    size_t sel = n;
    for (size_t i = c; i < n; ++i)
      if (m[i][c] != 0) {
        sel = i;
        break;
      }
    if (sel == n) return Rational(0);
    if (sel != c) {
      std::swap(m[sel], m[c]);
      det = -det;
    }
    det *= m[c][c];
    Rational p = m[c][c];
    for (size_t i = c + 1; i < n; ++i) {
      if (m[i][c] == 0) continue;
      Rational f = m[i][c] / p;
      for (size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  Rational fact(1);
  for (size_t i = 2; i <= n; ++i) fact *= Rational(static_cast<long>(i));
  Rational v = rational_abs(det) / fact;
  v.canonicalize();
  return v;
}

Polytope Simplex::to_polytope(int ambient_dim) const {
  return hull_of_points(ambient_dim, verts);
}

bool Simplex::affinely_independent() const {
  if (verts.empty()) return false;
  size_t n = verts[0].size();
  Matrix m;
  for (size_t i = 1; i < verts.size(); ++i) {
    Point d(n);
    for (size_t j = 0; j < n; ++j) d[j] = verts[i][j] - verts[0][j];
    m.push_back(std::move(d));
  }
  return matrix_rank(std::move(m)) == static_cast<int>(verts.size()) - 1;
}

std::vector<Simplex> kuhn_simplices(int n) {
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::vector<Simplex> out;
  do {
    Simplex s;
    Point v(n, Rational(0));
    s.verts.push_back(v);
    for (int k = 0; k < n; ++k) {
      v[perm[k]] = 1;
      s.verts.push_back(v);
    }
    out.push_back(std::move(s));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::vector<Simplex> kuhn_triangulate(int n) { return kuhn_simplices(n); }

// ---------------------------------------------------------------------------
// complexes

Simplex SimplicialComplex::geom(int i) const {
  Simplex s;
  for (int id : simplices[i]) s.verts.push_back(verts[id]);
  return s;
}

int ComplexBuilder::add_vertex(const Point& p) {
  auto it = index_.find(p);
  if (it != index_.end()) return it->second;
  int id = static_cast<int>(k_.verts.size());
  k_.verts.push_back(p);
  index_.emplace(p, id);
  return id;
}

void ComplexBuilder::add_simplex(const std::vector<Point>& verts) {
  std::vector<int> ids;
  ids.reserve(verts.size());
  for (const auto& v : verts) ids.push_back(add_vertex(v));
  add_simplex_ids(std::move(ids));
}

void ComplexBuilder::add_simplex_ids(std::vector<int> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  if (seen_.emplace(ids, true).second) k_.simplices.push_back(std::move(ids));
}

SimplicialComplex ComplexBuilder::take() { return std::move(k_); }

std::vector<Cell> split_cell(const Cell& cell, const Hyperplane& h) {
  int neg = 0, pos = 0;
  std::vector<Rational> side(cell.size());
  for (size_t i = 0; i < cell.size(); ++i) {
    side[i] = h.eval(cell[i]);
    if (side[i] > 0) ++pos;
    if (side[i] < 0) ++neg;
  }
  if (neg == 0 || pos == 0) return {cell};
  Cell lo, hi;
  for (size_t i = 0; i < cell.size(); ++i) {
    if (side[i] <= 0) lo.push_back(cell[i]);
    if (side[i] >= 0) hi.push_back(cell[i]);
  }
  for (size_t i = 0; i < cell.size(); ++i) {
    for (size_t j = i + 1; j < cell.size(); ++j) {
      if ((side[i] > 0 && side[j] < 0) || (side[i] < 0 && side[j] > 0)) {
        Rational t = side[i] / (side[i] - side[j]);
        Point p(cell[i].size());
        for (size_t q = 0; q < p.size(); ++q) {
          p[q] = cell[i][q] + t * (cell[j][q] - cell[i][q]);
          p[q].canonicalize();
        }
        lo.push_back(p);
        hi.push_back(std::move(p));
      }
    }
  }
  auto tidy = [](Cell& c) {
    std::sort(c.begin(), c.end(), PointLess{});
    c.erase(std::unique(c.begin(), c.end(),
                        [](const Point& a, const Point& b) { return point_cmp(a, b) == 0; }),
            c.end());
  };
  tidy(lo);
  tidy(hi);
  return {std::move(lo), std::move(hi)};
}

namespace {

// Points of `cell` lying on the hull facet h (exactly).
Cell facet_points(const Cell& cell, const HalfSpace& h) {
  Cell out;
  for (const auto& p : cell)
    if (h.eval(p) == 0) out.push_back(p);
  return out;
}

void pull_rec(const Cell& cell, std::vector<Point>& partial,
              std::vector<std::vector<Point>>& out) {
  if (cell.empty()) return;
  if (cell.size() == 1) {
    std::vector<Point> s = partial;
    s.push_back(cell[0]);
    out.push_back(std::move(s));
    return;
  }
  size_t dim = cell[0].size();
  Polytope hull = hull_of_points(static_cast<int>(dim), cell);
  const Point& v0 = cell[0];  // cells are sorted: lex-least point, always extreme
  bool cone = false;
  for (const auto& h : hull.halfspaces()) {
    if (h.eval(v0) == 0) continue;  // facet contains the apex
    Cell f = facet_points(cell, h);
    if (f.size() < 1) continue;
    // skip the paired equality rows of lower-dimensional hulls
    bool all = f.size() == cell.size();
    if (all) continue;
    cone = true;
    partial.push_back(v0);
    pull_rec(f, partial, out);
    partial.pop_back();
  }
  if (!cone) throw InternalError("pull triangulation: no facet misses the apex");
}

}  // namespace

std::vector<std::vector<Point>> pull_triangulate(const Cell& cell_in) {
  Cell cell = cell_in;
  std::sort(cell.begin(), cell.end(), PointLess{});
  cell.erase(std::unique(cell.begin(), cell.end(),
                         [](const Point& a, const Point& b) { return point_cmp(a, b) == 0; }),
             cell.end());
  std::vector<std::vector<Point>> out;
  std::vector<Point> partial;
  pull_rec(cell, partial, out);
  // drop degenerate (affinely dependent) outputs, dedupe
  std::vector<std::vector<Point>> res;
  std::set<std::string> seen;
  for (auto& s : out) {
    std::sort(s.begin(), s.end(), PointLess{});
    s.erase(std::unique(s.begin(), s.end(),
                        [](const Point& a, const Point& b) { return point_cmp(a, b) == 0; }),
            s.end());
    Simplex sx{s};
    if (!sx.affinely_independent()) continue;
    std::string k;
    for (const auto& p : s) k += point_str(p) + "|";
    if (seen.insert(k).second) res.push_back(std::move(s));
  }
  return res;
}

SimplicialComplex refine_by_hyperplanes(const SimplicialComplex& k,
                                        const std::vector<Hyperplane>& cuts_in) {
  std::vector<Hyperplane> cuts = dedupe_hyperplanes(cuts_in);
  ComplexBuilder b(k.dim);
  for (size_t si = 0; si < k.simplices.size(); ++si) {
    Simplex s = k.geom(static_cast<int>(si));
    std::vector<Cell> cells{Cell(s.verts)};
    for (auto& c : cells) std::sort(c.begin(), c.end(), PointLess{});
    for (const auto& h : cuts) {
      std::vector<Cell> next;
      for (const auto& c : cells) {
        auto parts = split_cell(c, h);
        for (auto& p : parts) next.push_back(std::move(p));
      }
      cells = std::move(next);
    }
    for (const auto& c : cells)
      for (const auto& tri : pull_triangulate(c)) b.add_simplex(tri);
  }
  return b.take();
}

std::vector<Hyperplane> dedupe_hyperplanes(std::vector<Hyperplane> hs) {
  std::set<std::string> seen;
  std::vector<Hyperplane> out;
  for (auto& h : hs) {
    bool zero = true;
    for (const auto& v : h.normal)
      if (v != 0) zero = false;
    if (zero) continue;
    h.canonicalize();
    if (seen.insert(h.key()).second) out.push_back(std::move(h));
  }
  return out;
}

// ---------------------------------------------------------------------------
// regions

Region Region::from_polytope(Polytope p) {
  Region r(p.dim());
  r.add(std::move(p));
  return r;
}

void Region::add(Polytope p) {
  if (pieces_.empty() && dim_ == 0) dim_ = p.dim();
  pieces_.push_back(std::move(p));
}

void Region::add_region(const Region& r) {
  for (const auto& p : r.pieces()) add(p);
}

bool Region::is_empty() const {
  for (const auto& p : pieces_)
    if (!p.is_empty()) return false;
  return true;
}

bool Region::contains(const Point& x) const {
  for (const auto& p : pieces_) {
    if (p.is_empty()) continue;
    const auto& b = p.bounds();
    bool inside_box = true;
    for (size_t i = 0; i < x.size() && inside_box; ++i)
      inside_box = b.first[i] <= x[i] && x[i] <= b.second[i];
    if (inside_box && p.contains(x)) return true;
  }
  return false;
}

void Region::drop_empty_pieces() {
  std::vector<Polytope> keep;
  for (auto& p : pieces_)
    if (!p.is_empty()) keep.push_back(std::move(p));
  pieces_ = std::move(keep);
}

std::vector<Hyperplane> Region::boundary_hyperplanes() const {
  std::vector<Hyperplane> hs;
  for (const auto& p : pieces_) {
    if (p.is_empty()) continue;
    for (const auto& h : p.halfspaces()) hs.emplace_back(h);
  }
  return dedupe_hyperplanes(std::move(hs));
}

std::optional<std::pair<Point, Point>> Region::bbox() const {
  std::optional<std::pair<Point, Point>> out;
  for (const auto& p : pieces_) {
    if (p.is_empty()) continue;
    const auto& b = p.bounds();
    if (!out) {
      out = b;
      continue;
    }
    for (int i = 0; i < dim_; ++i) {
      if (b.first[i] < out->first[i]) out->first[i] = b.first[i];
      if (b.second[i] > out->second[i]) out->second[i] = b.second[i];
    }
  }
  return out;
}

Region region_intersect(const Region& r, const Polytope& p) {
  Region out(r.dim());
  for (const auto& piece : r.pieces()) {
    if (piece.is_empty()) continue;
    Polytope q = piece.intersect(p);
    if (!q.is_empty()) out.add(std::move(q));
  }
  return out;
}

Region region_intersect(const Region& a, const Region& b) {
  Region out(a.dim());
  for (const auto& p : a.pieces()) {
    if (p.is_empty()) continue;
    for (const auto& q : b.pieces()) {
      if (q.is_empty()) continue;
      if (bounds_disjoint(p.bounds(), q.bounds())) continue;
      Polytope pq = p.intersect(q);
      if (!pq.is_empty()) out.add(std::move(pq));
    }
  }
  return out;
}

Region region_union(const Region& a, const Region& b) {
  Region out = a;
  out.add_region(b);
  return out;
}

std::optional<Point> region_meet_witness(const Region& a, const Region& b) {
  for (const auto& p : a.pieces()) {
    if (p.is_empty()) continue;
    for (const auto& q : b.pieces()) {
      if (q.is_empty()) continue;
      if (bounds_disjoint(p.bounds(), q.bounds())) continue;
      auto w = polytope_meet_witness(p, q);
      if (w) return w;
    }
  }
  return std::nullopt;
}

bool regions_disjoint(const Region& a, const Region& b, Point* witness) {
  auto w = region_meet_witness(a, b);
  if (w && witness) *witness = *w;
  return !w.has_value();
}

namespace {

struct StrictSys {
  std::vector<Point> a;
  std::vector<Rational> b;  // closed rows
  std::vector<Point> cs;
  std::vector<Rational> ds;  // strict rows
};

std::optional<Point> sys_witness(const StrictSys& s) {
  return lp_strict_feasible_point(s.a, s.b, s.cs, s.ds);
}

bool covered_rec(const StrictSys& sys, const std::vector<Polytope>& cover, size_t idx,
                 Point* witness) {
  auto w = sys_witness(sys);
  if (!w) return true;
  if (idx == cover.size()) {
    if (witness) *witness = *w;
    return false;
  }
  const Polytope& q = cover[idx];
  if (q.is_empty()) return covered_rec(sys, cover, idx + 1, witness);
  {
    StrictSys meet = sys;
    for (const auto& h : q.halfspaces()) {
      meet.a.push_back(h.normal);
      meet.b.push_back(h.offset);
    }
    if (!sys_witness(meet)) return covered_rec(sys, cover, idx + 1, witness);
  }
  StrictSys branch = sys;
  for (const auto& h : q.halfspaces()) {
    StrictSys sub = branch;
    HalfSpace f = h.flipped();
    sub.cs.push_back(f.normal);
    sub.ds.push_back(f.offset);
    if (!covered_rec(sub, cover, idx + 1, witness)) return false;
    branch.a.push_back(h.normal);
    branch.b.push_back(h.offset);
  }
  return true;
}

}  // namespace

bool piece_covered(const Polytope& base, const std::vector<Polytope>& cover, Point* witness) {
  if (base.is_empty()) return true;
  StrictSys sys;
  for (const auto& h : base.halfspaces()) {
    sys.a.push_back(h.normal);
    sys.b.push_back(h.offset);
  }
  if (sys.a.empty()) return covered_rec(sys, cover, 0, witness);
  // bbox-gate the cover pieces against the base
  std::vector<Polytope> use;
  const auto& bb = base.bounds();
  for (const auto& q : cover) {
    if (q.is_empty()) continue;
    if (bounds_disjoint(bb, q.bounds())) continue;
    use.push_back(q);
  }
  return covered_rec(sys, use, 0, witness);
}

bool region_covered(const Region& sub, const Region& cover, Point* witness) {
  for (const auto& p : sub.pieces()) {
    if (p.is_empty()) continue;
    if (!piece_covered(p, cover.pieces(), witness)) return false;
  }
  return true;
}

Rational region_distance_inf(const Region& a, const Region& b) {
  bool first = true;
  Rational best(0);
  for (const auto& p : a.pieces()) {
    if (p.is_empty()) continue;
    for (const auto& q : b.pieces()) {
      if (q.is_empty()) continue;
      Rational d = polytope_distance_inf(p, q);
      if (first || d < best) {
        best = d;
        first = false;
      }
      if (best == 0) return best;
    }
  }
  if (first) throw InternalError("distance between empty regions");
  return best;
}

void simplify_region(Region& r, int merge_passes) {
  for (auto& p : r.pieces()) p.minimize();
  r.drop_empty_pieces();
  // dedupe
  {
    std::set<std::string> seen;
    std::vector<Polytope> keep;
    for (auto& p : r.pieces())
      if (seen.insert(p.key()).second) keep.push_back(std::move(p));
    r.pieces() = std::move(keep);
  }
  // drop pieces contained in another piece (bbox inclusion gates the LPs)
  if (r.pieces().size() <= 512) {
    auto& ps = r.pieces();
    auto bbox_inside = [](const std::pair<Point, Point>& a, const std::pair<Point, Point>& b) {
      for (size_t i = 0; i < a.first.size(); ++i)
        if (a.first[i] < b.first[i] || a.second[i] > b.second[i]) return false;
      return true;
    };
    std::vector<bool> dead(ps.size(), false);
    for (size_t i = 0; i < ps.size(); ++i) {
      if (dead[i]) continue;
      for (size_t j = 0; j < ps.size(); ++j) {
        if (i == j || dead[j] || dead[i]) continue;
        if (!bbox_inside(ps[i].bounds(), ps[j].bounds())) continue;
        if (ps[i].subset_of(ps[j])) {
          dead[i] = true;
          break;
        }
      }
    }
    std::vector<Polytope> keep;
    for (size_t i = 0; i < ps.size(); ++i)
      if (!dead[i]) keep.push_back(std::move(ps[i]));
    ps = std::move(keep);
  }
  // pairwise convex-union merges, gated on a shared complementary facet
  if (r.pieces().size() > 512) merge_passes = 0;
  for (int pass = 0; pass < merge_passes; ++pass) {
    auto& ps = r.pieces();
    bool any = false;
    for (size_t i = 0; i < ps.size(); ++i) {
      bool merged = true;
      while (merged) {
        merged = false;
        for (size_t j = i + 1; j < ps.size(); ++j) {
          if (bounds_disjoint(ps[i].bounds(), ps[j].bounds())) continue;
          bool shared = false;
          std::set<std::string> jrows;
          for (const auto& h : ps[j].halfspaces()) jrows.insert(h.key());
          for (const auto& h : ps[i].halfspaces()) {
            HalfSpace f = h.flipped();
            f.canonicalize();
            if (jrows.count(f.key())) {
              shared = true;
              break;
            }
          }
          if (!shared) continue;
          std::vector<Point> pts = ps[i].vertices();
          for (const auto& v : ps[j].vertices()) pts.push_back(v);
          Polytope hull = hull_of_points(r.dim(), pts);
          if (piece_covered(hull, {ps[i], ps[j]})) {
            hull.minimize();
            ps[i] = std::move(hull);
            ps.erase(ps.begin() + j);
            merged = true;
            any = true;
            break;
          }
        }
      }
    }
    if (!any) break;
  }
}

Region swell_region(const Region& r, const Rational& eps) {
  Region out(r.dim());
  int n = r.dim();
  std::vector<Point> corners;
  for (long mask = 0; mask < (1L << n); ++mask) {
    Point c(n);
    for (int i = 0; i < n; ++i) c[i] = (mask >> i) & 1 ? eps : -eps;
    corners.push_back(std::move(c));
  }
  for (const auto& p : r.pieces()) {
    if (p.is_empty()) continue;
    std::vector<Point> pts;
    for (const auto& v : p.vertices())
      for (const auto& c : corners) {
        Point q(n);
        for (int i = 0; i < n; ++i) q[i] = v[i] + c[i];
        pts.push_back(std::move(q));
      }
    out.add(hull_of_points(n, pts));
  }
  return out;
}

Region subtract_open(const Region& base, const std::vector<Region>& removed) {
  Region cur = base;
  cur.drop_empty_pieces();
  for (const auto& rem : removed) {
    for (const auto& w : rem.pieces()) {
      if (w.is_empty()) continue;
      Region next(cur.dim());
      for (const auto& p : cur.pieces()) {
        if (bounds_disjoint(p.bounds(), w.bounds())) {
          next.add(p);
          continue;
        }
        for (const auto& h : w.halfspaces()) {
          Polytope q = p;
          q.add(h.flipped());
          if (!q.is_empty()) next.add(std::move(q));
        }
      }
      cur = std::move(next);
      if (cur.pieces().size() > 64) simplify_region(cur, 1);
    }
  }
  simplify_region(cur, 1);
  return cur;
}

}  // namespace fpfcolor
