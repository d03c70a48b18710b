#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>

namespace canyon {

using Rational = mpq_class;
using cplx = std::complex<double>;
using cplxl = std::complex<long double>;

Rational make_rational(long num, long den = 1);
double to_double(const Rational& q);
// Always "p/q", also for integers ("3/1").
std::string to_pq(const Rational& q);
// Parses "p", "p/q" or "-p/q".
Rational rational_from_string(const std::string& s);
Rational floor_q(const Rational& q);
// Least common multiple of denominators.
long lcm_long(long a, long b);
long den_long(const Rational& q);

// Element of Q ∪ {∞}.
struct QExt {
  bool infinite = false;
  Rational value = 0;

  QExt() = default;
  QExt(const Rational& v) : value(v) {}  // NOLINT
  static QExt inf() { QExt r; r.infinite = true; return r; }
  double to_double() const;
  std::string str() const;  // "p/q" or "inf"
};

bool operator==(const QExt& a, const QExt& b);
bool operator<(const QExt& a, const QExt& b);
inline bool operator!=(const QExt& a, const QExt& b) { return !(a == b); }
inline bool operator>(const QExt& a, const QExt& b) { return b < a; }
inline bool operator<=(const QExt& a, const QExt& b) { return !(b < a); }
inline bool operator>=(const QExt& a, const QExt& b) { return !(a < b); }

// Gaussian rational a + b i.
struct GQ {
  Rational re = 0;
  Rational im = 0;

  GQ() = default;
  GQ(const Rational& r) : re(r) {}  // NOLINT
  GQ(const Rational& r, const Rational& i) : re(r), im(i) {}
  static GQ integer(long v) { return GQ(Rational(v)); }

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  GQ conj() const { return GQ(re, -im); }
  Rational norm() const { return re * re + im * im; }
  cplx to_complex() const { return {re.get_d(), im.get_d()}; }
  std::string str() const;

  GQ& operator+=(const GQ& o);
  GQ& operator-=(const GQ& o);
  GQ& operator*=(const GQ& o);
  GQ& operator/=(const GQ& o);
};

GQ operator+(GQ a, const GQ& b);
GQ operator-(GQ a, const GQ& b);
GQ operator*(GQ a, const GQ& b);
GQ operator/(GQ a, const GQ& b);
GQ operator-(const GQ& a);
bool operator==(const GQ& a, const GQ& b);
inline bool operator!=(const GQ& a, const GQ& b) { return !(a == b); }
GQ pow(const GQ& a, unsigned k);

// Nearest Gaussian rational with denominators <= max_den (continued fractions).
GQ rationalize(cplx c, long max_den);
Rational rationalize_real(double x, long max_den);

}  // namespace canyon
