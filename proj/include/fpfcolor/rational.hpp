#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace fpfcolor {

// All coordinates, offsets and margins in the engine are exact rationals.
// mpq_class keeps values canonical (gcd(|num|,den)=1, den>0) after
// canonicalize(); every constructor path below goes through it.
using Rational = mpq_class;
using Point = std::vector<Rational>;

/// Parse "p/q" or "p" (arbitrary precision). Throws InputError for malformed
/// strings or zero denominators.
Rational parse_rational(const std::string& s);

/// Canonical string form: "p" when the denominator is 1, otherwise "p/q".
std::string rational_str(const Rational& q);

std::string point_str(const Point& p);

Rational rational_abs(const Rational& q);

/// Largest integer <= q and smallest integer >= q.
long floor_long(const Rational& q);
long ceil_long(const Rational& q);

/// Largest dyadic rational p/2^k <= q with the smallest k that keeps the
/// value positive when q > 0. Used to pick small-denominator gaps.
Rational dyadic_floor(const Rational& q);

/// Deterministic 64-bit PRNG (splitmix64). Distribution helpers are written
/// out explicitly so results do not depend on the standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  /// uniform in [0, bound)
  std::uint64_t below(std::uint64_t bound);
  /// uniform odd p in [1, 2^10), returned as p/1024 in (0,1)
  Rational unit_free_value();
  /// derive an independent stream for retry #k
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t k);

 private:
  std::uint64_t state_;
};

int point_cmp(const Point& a, const Point& b);

struct PointLess {
  bool operator()(const Point& a, const Point& b) const { return point_cmp(a, b) < 0; }
};

}  // namespace fpfcolor
