#include "fpfcolor/rational.hpp"

#include <sstream>

#include "fpfcolor/errors.hpp"

namespace fpfcolor {

Rational parse_rational(const std::string& s) {
  if (s.empty()) throw InputError("empty rational literal");
  for (char c : s) {
    if (!(c == '-' || c == '+' || c == '/' || (c >= '0' && c <= '9')))
      throw InputError("bad rational literal: " + s);
  }
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw InputError("bad rational literal: " + s);
  if (q.get_den() == 0) throw InputError("zero denominator: " + s);
  q.canonicalize();
  return q;
}

std::string rational_str(const Rational& q) { return q.get_str(); }

std::string point_str(const Point& p) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < p.size(); ++i) {
    if (i) os << ", ";
    os << rational_str(p[i]);
  }
  os << ")";
  return os.str();
}

Rational rational_abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

long floor_long(const Rational& q) {
  mpz_class z;
  mpz_fdiv_q(z.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return static_cast<long>(z.get_si());
}

long ceil_long(const Rational& q) {
  mpz_class z;
  mpz_cdiv_q(z.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return static_cast<long>(z.get_si());
}

Rational dyadic_floor(const Rational& q) {
  if (q <= 0) return Rational(0);
  for (unsigned k = 0; k <= 63; ++k) {
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 2, k);
    Rational scaled = q * Rational(scale);
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    if (fl > 0) {
      Rational out(fl, scale);
      out.canonicalize();
      return out;
    }
  }
  return q;  // absurdly small; keep exact value
}

std::uint64_t Rng::next() {
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t Rng::below(std::uint64_t bound) { return bound == 0 ? 0 : next() % bound; }

Rational Rng::unit_free_value() {
  std::uint64_t p = 2 * below(512) + 1;  // odd in [1, 1023]
  Rational q(static_cast<long>(p), 1024);
  q.canonicalize();
  return q;
}

std::uint64_t Rng::derive(std::uint64_t seed, std::uint64_t k) {
  Rng r(seed ^ (0xd1342543de82ef95ULL * (k + 1)));
  return r.next();
}

int point_cmp(const Point& a, const Point& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (size_t i = 0; i < a.size(); ++i) {
    int c = mpq_cmp(a[i].get_mpq_t(), b[i].get_mpq_t());
    if (c != 0) return c < 0 ? -1 : 1;
  }
  return 0;
}

}  // namespace fpfcolor
