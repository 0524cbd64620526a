#pragma once

// Exact arithmetic aliases used throughout the library. All kernels work on
// arbitrary-precision integers/rationals; fixed-width types appear only in
// leaf code where values are provably tiny (graph chip counts).

#include <gmpxx.h>

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace tropx {

using Int = mpz_class;
using Rat = mpq_class;

inline Int int_of(long v) { return Int(v); }

inline Rat rat(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline Rat rat(const Int& num, const Int& den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

inline Int to_int(const Rat& q) {
  if (!is_integer(q)) throw std::domain_error("rational is not an integer: " + q.get_str());
  return q.get_num();
}

inline Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int lcm(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

// g = gcd(a, b) together with x, y such that a*x + b*y = g.
inline Int gcd_ext(const Int& a, const Int& b, Int& x, Int& y) {
  Int g;
  mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline int sign(const Int& a) { return mpz_sgn(a.get_mpz_t()); }
inline int sign(const Rat& a) { return mpq_sgn(a.get_mpq_t()); }

inline Int abs(const Int& a) {
  Int r;
  mpz_abs(r.get_mpz_t(), a.get_mpz_t());
  return r;
}

// Exact quotient; throws if b does not divide a.
inline Int exact_div(const Int& a, const Int& b) {
  if (b == 0) throw std::domain_error("division by zero");
  Int q, r;
  mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  if (r != 0) throw std::domain_error("non-exact integer division");
  return q;
}

inline Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace tropx
