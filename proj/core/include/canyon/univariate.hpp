#pragma once

#include "canyon/rational.hpp"

#include <utility>
#include <vector>

namespace canyon {

// Dense univariate polynomial over Q(i), coefficients low to high.
class UPoly {
public:
  UPoly() = default;
  explicit UPoly(std::vector<GQ> c) : c_(std::move(c)) { trim(); }
  static UPoly constant(const GQ& a) { return UPoly(std::vector<GQ>{a}); }
  static UPoly monomial(const GQ& a, int k);

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const std::vector<GQ>& coeffs() const { return c_; }
  GQ coeff(int k) const;
  GQ lead() const { return c_.empty() ? GQ() : c_.back(); }
  // Lowest index with nonzero coefficient; -1 for zero.
  int order() const;

  UPoly derivative() const;
  UPoly monic() const;
  GQ eval(const GQ& x) const;
  cplx eval(cplx x) const;
  std::vector<cplx> to_complex() const;

  UPoly& operator+=(const UPoly& o);
  UPoly& operator-=(const UPoly& o);
  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const GQ& s, const UPoly& a);
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

private:
  void trim();
  std::vector<GQ> c_;
};

// Euclidean division over the field Q(i).
std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
// Exact quotient; throws if the remainder is nonzero.
UPoly exact_div(const UPoly& a, const UPoly& b);
// Monic gcd (zero if both are zero).
UPoly gcd(UPoly a, UPoly b);
// Yun's square-free decomposition: a = lead * prod f_k^k, returned as (f_k, k).
std::vector<std::pair<UPoly, int>> squarefree(const UPoly& a);

// Simultaneous (Aberth-Ehrlich) iteration for all roots of a complex
// polynomial given low-to-high. Throws SolverDivergence on failure.
std::vector<cplx> poly_roots(const std::vector<cplx>& coeffs,
                             const std::vector<cplx>* initial = nullptr,
                             int max_iter = 500);
cplx horner(const std::vector<cplx>& coeffs, cplx x);

struct ClusteredRoot {
  cplx z;
  int mult;
};
// Roots with multiplicity: square-free factorization first, then numeric
// roots of each factor, then clustering at relative distance `cluster_tol`.
std::vector<ClusteredRoot> roots_with_multiplicity(const UPoly& p,
                                                   double cluster_tol = 1e-8);

}  // namespace canyon
