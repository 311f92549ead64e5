#pragma once

#include <optional>
#include <vector>

#include "fpfcolor/rational.hpp"

namespace fpfcolor {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rational value;
  Point x;  // optimizer (empty unless Optimal)
};

/// Exact rational simplex (Bland's rule, hence finite) for
///   maximize c.x  subject to  A x <= b,  x free.
/// Free variables are split internally; feasibility uses a single
/// artificial-variable phase one.
LpResult lp_maximize(const std::vector<Point>& A, const std::vector<Rational>& b, const Point& c);

LpResult lp_minimize(const std::vector<Point>& A, const std::vector<Rational>& b, const Point& c);

/// Witness point of {x : A x <= b}, or nullopt when empty.
std::optional<Point> lp_feasible_point(const std::vector<Point>& A, const std::vector<Rational>& b);

/// Witness of {x : A x <= b, C x < d} (mixed closed/strict system), decided
/// exactly by maximizing the strict slack.
std::optional<Point> lp_strict_feasible_point(const std::vector<Point>& A,
                                              const std::vector<Rational>& b,
                                              const std::vector<Point>& C,
                                              const std::vector<Rational>& d);

}  // namespace fpfcolor
