#include "canyon/rational.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace canyon {

Rational make_rational(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

double to_double(const Rational& q) { return q.get_d(); }

std::string to_pq(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational rational_from_string(const std::string& s) {
  Rational q(s, 10);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  q.canonicalize();
  return q;
}

Rational floor_q(const Rational& q) {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(f);
}

long lcm_long(long a, long b) { return std::lcm(a, b); }

long den_long(const Rational& q) { return q.get_den().get_si(); }

double QExt::to_double() const {
  return infinite ? INFINITY : value.get_d();
}

std::string QExt::str() const { return infinite ? "inf" : to_pq(value); }

bool operator==(const QExt& a, const QExt& b) {
  if (a.infinite || b.infinite) return a.infinite == b.infinite;
  return a.value == b.value;
}

bool operator<(const QExt& a, const QExt& b) {
  if (a.infinite) return false;
  if (b.infinite) return true;
  return a.value < b.value;
}

std::string GQ::str() const {
  if (sgn(im) == 0) return re.get_str();
  if (sgn(re) == 0) return "(" + im.get_str() + "*i)";
  std::string s = "(" + re.get_str();
  s += sgn(im) > 0 ? "+" : "-";
  Rational a = abs(im);
  s += a.get_str() + "*i)";
  return s;
}

GQ& GQ::operator+=(const GQ& o) {
  re += o.re;
  im += o.im;
  return *this;
}

GQ& GQ::operator-=(const GQ& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

GQ& GQ::operator*=(const GQ& o) {
  Rational r = re * o.re - im * o.im;
  Rational i = re * o.im + im * o.re;
  re = r;
  im = i;
  return *this;
}

GQ& GQ::operator/=(const GQ& o) {
  Rational n = o.norm();
  if (sgn(n) == 0) throw std::domain_error("division by zero Gaussian rational");
  Rational r = (re * o.re + im * o.im) / n;
  Rational i = (im * o.re - re * o.im) / n;
  re = r;
  im = i;
  return *this;
}

GQ operator+(GQ a, const GQ& b) { return a += b; }
GQ operator-(GQ a, const GQ& b) { return a -= b; }
GQ operator*(GQ a, const GQ& b) { return a *= b; }
GQ operator/(GQ a, const GQ& b) { return a /= b; }
GQ operator-(const GQ& a) { return GQ(-a.re, -a.im); }
bool operator==(const GQ& a, const GQ& b) { return a.re == b.re && a.im == b.im; }

GQ pow(const GQ& a, unsigned k) {
  GQ r = GQ::integer(1), b = a;
  while (k) {
    if (k & 1u) r *= b;
    b *= b;
    k >>= 1u;
  }
  return r;
}

Rational rationalize_real(double x, long max_den) {
  if (!std::isfinite(x)) throw std::domain_error("rationalize of non-finite value");
  long sign = x < 0 ? -1 : 1;
  double v = std::fabs(x);
  // convergents h/k
  long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double r = v;
  for (int it = 0; it < 64; ++it) {
    double a = std::floor(r);
    if (a > 1e15) break;
    long ai = static_cast<long>(a);
    long h2 = ai * h1 + h0, k2 = ai * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1; h1 = h2; k0 = k1; k1 = k2;
    double frac = r - a;
    if (frac < 1e-14) break;
    r = 1.0 / frac;
  }
  if (k1 == 0) return Rational(0);
  return make_rational(sign * h1, k1);
}

GQ rationalize(cplx c, long max_den) {
  return GQ(rationalize_real(c.real(), max_den), rationalize_real(c.imag(), max_den));
}

}  // namespace canyon
