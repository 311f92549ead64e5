#include "fpfcolor/lp.hpp"

#include <cassert>

#include "fpfcolor/errors.hpp"

namespace fpfcolor {
namespace {

// Dense exact simplex tableau over equality form  B z = rhs, z >= 0.
// Columns: 2d structural (x = u - w), m slacks, optionally one artificial.
class Tableau {
 public:
  Tableau(const std::vector<Point>& A, const std::vector<Rational>& b, const Point& c)
      : d_(c.size()), m_(A.size()), ncols_(2 * c.size() + A.size() + 1) {
    rows_.assign(m_, std::vector<Rational>(ncols_ + 1, Rational(0)));
    basis_.resize(m_);
    for (size_t i = 0; i < m_; ++i) {
      assert(A[i].size() == d_);
      for (size_t j = 0; j < d_; ++j) {
        rows_[i][j] = A[i][j];
        rows_[i][d_ + j] = -A[i][j];
      }
      rows_[i][2 * d_ + i] = 1;      // slack
      rows_[i][art_col()] = -1;      // artificial (used only in phase one)
      rows_[i][rhs_col()] = b[i];
      basis_[i] = 2 * d_ + i;
    }
    cost_.assign(ncols_ + 1, Rational(0));
    for (size_t j = 0; j < d_; ++j) {
      cost_[j] = c[j];
      cost_[d_ + j] = -c[j];
    }
  }

  LpResult solve() {
    if (!phase_one()) return {LpStatus::Infeasible, Rational(0), {}};
    art_allowed_ = false;
    load_objective(cost_);
    LpStatus st = iterate();
    LpResult res;
    res.status = st;
    if (st == LpStatus::Optimal) {
      res.value = -obj_[rhs_col()];
      res.x = extract_point();
    }
    return res;
  }

 private:
  size_t art_col() const { return ncols_ - 1; }
  size_t rhs_col() const { return ncols_; }

  bool phase_one() {
    size_t worst = m_;
    for (size_t i = 0; i < m_; ++i)
      if (rows_[i][rhs_col()] < 0 && (worst == m_ || rows_[i][rhs_col()] < rows_[worst][rhs_col()]))
        worst = i;
    if (worst == m_) return true;  // all rhs nonnegative, slack basis feasible
    art_allowed_ = true;
    std::vector<Rational> phase_cost(ncols_ + 1, Rational(0));
    phase_cost[art_col()] = -1;  // maximize -x0
    pivot(worst, art_col());
    load_objective(phase_cost);
    LpStatus st = iterate();
    assert(st == LpStatus::Optimal);
    (void)st;
    if (obj_[rhs_col()] != 0) return false;  // min x0 > 0
    // drive the artificial out of the basis if it lingers at level zero
    for (size_t i = 0; i < m_; ++i) {
      if (basis_[i] != art_col()) continue;
      size_t j = 0;
      for (; j < art_col(); ++j)
        if (rows_[i][j] != 0) break;
      if (j < art_col()) pivot(i, j);
      break;
    }
    return true;
  }

  void load_objective(const std::vector<Rational>& cost) {
    obj_ = cost;
    obj_[rhs_col()] = 0;
    // price out the current basis
    for (size_t i = 0; i < m_; ++i) {
      const Rational& cb = cost[basis_[i]];
      if (cb == 0) continue;
      for (size_t j = 0; j <= ncols_; ++j) obj_[j] -= cb * rows_[i][j];
    }
    for (size_t i = 0; i < m_; ++i) obj_[basis_[i]] = 0;
  }

  LpStatus iterate() {
    for (;;) {
      size_t enter = ncols_;
      size_t limit = art_allowed_ ? ncols_ : art_col();
      for (size_t j = 0; j < limit; ++j) {
        if (obj_[j] > 0) {  // Bland: first improving column
          enter = j;
          break;
        }
      }
      if (enter == ncols_) return LpStatus::Optimal;
      size_t leave = m_;
      Rational best_ratio;
      for (size_t i = 0; i < m_; ++i) {
        if (rows_[i][enter] <= 0) continue;
        Rational ratio = rows_[i][rhs_col()] / rows_[i][enter];
        if (leave == m_ || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave == m_) return LpStatus::Unbounded;
      pivot(leave, enter);
    }
  }

  void pivot(size_t row, size_t col) {
    Rational p = rows_[row][col];
    assert(p != 0);
    for (size_t j = 0; j <= ncols_; ++j) rows_[row][j] /= p;
    for (size_t i = 0; i < m_; ++i) {
      if (i == row || rows_[i][col] == 0) continue;
      Rational f = rows_[i][col];
      for (size_t j = 0; j <= ncols_; ++j) rows_[i][j] -= f * rows_[row][j];
    }
    if (!obj_.empty() && obj_[col] != 0) {
      Rational f = obj_[col];
      for (size_t j = 0; j <= ncols_; ++j) obj_[j] -= f * rows_[row][j];
    }
    basis_[row] = col;
  }

  Point extract_point() const {
    Point x(d_, Rational(0));
    for (size_t i = 0; i < m_; ++i) {
      size_t v = basis_[i];
      if (v < d_)
        x[v] += rows_[i][rhs_col()];
      else if (v < 2 * d_)
        x[v - d_] -= rows_[i][rhs_col()];
    }
    return x;
  }

  size_t d_, m_, ncols_;
  bool art_allowed_ = false;
  std::vector<std::vector<Rational>> rows_;
  std::vector<Rational> obj_;
  std::vector<Rational> cost_;
  std::vector<size_t> basis_;
};

}  // namespace

LpResult lp_maximize(const std::vector<Point>& A, const std::vector<Rational>& b, const Point& c) {
  if (A.empty()) {
    // no constraints: optimum is 0 iff c == 0, else unbounded
    for (const auto& ci : c)
      if (ci != 0) return {LpStatus::Unbounded, Rational(0), {}};
    return {LpStatus::Optimal, Rational(0), Point(c.size(), Rational(0))};
  }
  Tableau t(A, b, c);
  return t.solve();
}

LpResult lp_minimize(const std::vector<Point>& A, const std::vector<Rational>& b, const Point& c) {
  Point neg(c.size());
  for (size_t i = 0; i < c.size(); ++i) neg[i] = -c[i];
  LpResult r = lp_maximize(A, b, neg);
  if (r.status == LpStatus::Optimal) r.value = -r.value;
  return r;
}

std::optional<Point> lp_feasible_point(const std::vector<Point>& A,
                                       const std::vector<Rational>& b) {
  if (A.empty()) return Point{};
  Point zero(A[0].size(), Rational(0));
  LpResult r = lp_maximize(A, b, zero);
  if (r.status != LpStatus::Optimal) return std::nullopt;
  return r.x;
}

std::optional<Point> lp_strict_feasible_point(const std::vector<Point>& A,
                                              const std::vector<Rational>& b,
                                              const std::vector<Point>& C,
                                              const std::vector<Rational>& d) {
  if (C.empty()) return lp_feasible_point(A, b);
  size_t dim = C[0].size();
  // variables (x, eps); maximize eps with eps <= 1
  std::vector<Point> rows;
  std::vector<Rational> rhs;
  auto push = [&](const Point& a, const Rational& bb, const Rational& eps_coef) {
    Point r = a;
    r.push_back(eps_coef);
    rows.push_back(std::move(r));
    rhs.push_back(bb);
  };
  for (size_t i = 0; i < A.size(); ++i) push(A[i], b[i], Rational(0));
  for (size_t i = 0; i < C.size(); ++i) push(C[i], d[i], Rational(1));
  push(Point(dim, Rational(0)), Rational(1), Rational(1));   // eps <= 1
  push(Point(dim, Rational(0)), Rational(0), Rational(-1));  // eps >= 0
  Point obj(dim + 1, Rational(0));
  obj[dim] = 1;
  LpResult r = lp_maximize(rows, rhs, obj);
  if (r.status != LpStatus::Optimal || r.value <= 0) return std::nullopt;
  Point x(r.x.begin(), r.x.begin() + dim);
  return x;
}

}  // namespace fpfcolor
