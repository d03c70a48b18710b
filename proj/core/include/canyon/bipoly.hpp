#pragma once

#include "canyon/rational.hpp"
#include "canyon/univariate.hpp"

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace canyon {

// Sparse polynomial in z, w over Q(i). Keys are (i, j) for z^i w^j.
class BiPoly {
public:
  using Key = std::pair<int, int>;
  using Map = std::map<Key, GQ>;

  BiPoly() = default;
  static BiPoly constant(const GQ& c);
  static BiPoly z();
  static BiPoly w();
  static BiPoly monomial(const GQ& c, int i, int j);

  const Map& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  std::size_t size() const { return t_.size(); }
  GQ coeff(int i, int j) const;
  void add_term(int i, int j, const GQ& c);

  // Total order O(f); -1 for zero.
  int order() const;
  int degree() const;
  int deg_z() const;
  int deg_w() const;
  // Sum of |coefficient| as doubles.
  double coeff_magnitude() const;
  bool is_constant() const;

  BiPoly dz() const;
  BiPoly dw() const;
  // Homogeneous part of total degree k.
  BiPoly homogeneous(int k) const;
  // Coefficients of z^i as polynomials in w, i = 0..deg_z.
  std::vector<UPoly> as_poly_in_z() const;
  static BiPoly from_poly_in_z(const std::vector<UPoly>& c);
  // Restriction H(z, 1) as a univariate polynomial in z.
  UPoly at_w_one() const;
  // f(z, 0) as polynomial in z.
  UPoly at_w_zero() const;

  cplx eval(cplx z, cplx w) const;
  GQ eval(const GQ& z, const GQ& w) const;

  // f(U (z,w)^T): z -> a z + b w, w -> c z + d w with U = [[a,b],[c,d]].
  BiPoly compose_linear(const std::array<GQ, 4>& U) const;
  BiPoly swap_zw() const;

  BiPoly& operator+=(const BiPoly& o);
  BiPoly& operator-=(const BiPoly& o);
  friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
  friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
  friend BiPoly operator-(const BiPoly& a);
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
  friend BiPoly operator*(const GQ& s, const BiPoly& a);
  friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.t_ == b.t_; }

  std::string str() const;

private:
  Map t_;
};

BiPoly pow(const BiPoly& a, unsigned k);

// Exact bivariate division (lex, z > w); nullopt-like failure via bool.
bool try_exact_div(const BiPoly& a, const BiPoly& b, BiPoly& quotient);
// gcd over Q(i)[w][z] by primitive remainder sequences; normalized so the
// leading z-coefficient has monic leading w-coefficient.
BiPoly gcd(const BiPoly& a, const BiPoly& b);
// Square-free decomposition in z (content in w assumed constant).
std::vector<std::pair<BiPoly, int>> squarefree_z(const BiPoly& f);

// The bordered-Hessian determinant numerator
// Δ = 2 f_z f_w f_zw − f_zz f_w² − f_ww f_z² as an exact polynomial.
BiPoly delta_poly(const BiPoly& f);

// Fraction-free determinant over Q(i)[w].
UPoly bareiss_det(std::vector<std::vector<UPoly>> a);
// Sylvester resultant in z, as a polynomial in w.
UPoly resultant_z(const BiPoly& a, const BiPoly& b);

// Dense complex bivariate polynomial c[i][k] for x^i y^k, used on hot paths.
class CPoly2 {
public:
  CPoly2() = default;
  explicit CPoly2(std::vector<std::vector<cplx>> c);
  static CPoly2 from(const BiPoly& f);

  int deg_x() const { return static_cast<int>(c_.size()) - 1; }
  int deg_y() const;
  const std::vector<std::vector<cplx>>& coeffs() const { return c_; }
  cplx eval(cplx x, cplx y) const;
  // Extended-range evaluation for deep arcs where double underflows.
  cplxl eval(cplxl x, cplxl y) const;
  CPoly2 dx() const;
  CPoly2 dy() const;
  // Coefficients in x (low to high) at a fixed y.
  std::vector<cplx> in_x(cplx y) const;
  // Coefficients in y (low to high) at a fixed x.
  std::vector<cplx> in_y(cplx x) const;

private:
  std::vector<std::vector<cplx>> c_;
};

}  // namespace canyon
