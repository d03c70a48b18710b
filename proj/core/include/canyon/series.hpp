#pragma once

#include "canyon/bipoly.hpp"
#include "canyon/curvature.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace canyon {

struct PTerm {
  Rational q;
  cplx c;
  std::optional<GQ> exact;
};

// Truncated Puiseux series sum c_i y^{q_i}. Exponents above trunc_order are
// unknown; an infinite trunc_order means the finite sum is the whole series.
class PuiseuxSeries {
public:
  PuiseuxSeries() = default;
  explicit PuiseuxSeries(std::vector<PTerm> terms, QExt trunc = QExt::inf());
  static PuiseuxSeries zero(QExt trunc = QExt::inf()) { return PuiseuxSeries({}, trunc); }
  static PuiseuxSeries monomial(const GQ& c, const Rational& q, QExt trunc = QExt::inf());
  static PuiseuxSeries monomial(cplx c, const Rational& q, QExt trunc = QExt::inf());

  const std::vector<PTerm>& terms() const { return terms_; }
  long N() const { return N_; }
  const QExt& trunc_order() const { return trunc_; }
  void set_trunc_order(const QExt& t) { trunc_ = t; }
  bool is_zero() const { return terms_.empty(); }
  bool is_exact() const;  // all coefficients exact and infinite trunc order
  QExt order() const;  // ∞ for the zero series

  // Value at y using the principal branch of y^{1/N}.
  cplx eval(cplx y) const;
  // Value at y = t^M where M is a multiple of N.
  cplx eval_t(cplx t, long M) const;
  // d/dy at y = t^M.
  cplx deriv_t(cplx t, long M) const;

  // Keeps terms with q < e (strict) or q <= e; trunc order becomes infinite
  // for the truncated representative.
  PuiseuxSeries truncated_below(const Rational& e, bool inclusive) const;
  PuiseuxSeries plus_monomial(cplx c, const Rational& q) const;
  // k-th conjugate: c_i -> c_i θ^{k n_i}, θ = e^{2πi/N}, q_i = n_i/N.
  PuiseuxSeries conjugate(long k) const;

  std::string str(int max_terms = 6) const;

private:
  void normalize();
  std::vector<PTerm> terms_;
  long N_ = 1;
  QExt trunc_ = QExt::inf();
};

std::vector<PuiseuxSeries> conjugates(const PuiseuxSeries& gamma);

// Max over conjugate pairs of O_y(α − β). Returns ∞ when some conjugate
// agrees with β at every exponent up to the common truncation order; with
// strict = true, agreement up to a finite truncation order throws
// IndeterminateAtTruncation instead.
QExt contact_order(const PuiseuxSeries& alpha, const PuiseuxSeries& beta, bool strict = false,
                   double rel_tol = 1e-8);

// (γ(y) + u y^e, y), branch fixed via y = t^M with principal t.
// O_y(α − β) for the given labelings, without rotating either series.
QExt direct_contact(const PuiseuxSeries& alpha, const PuiseuxSeries& beta, double rel_tol = 1e-8);

ComplexPoint evaluate_arc(const PuiseuxSeries& gamma, cplx u, const Rational& e, cplx y);

// Series in Z (integer powers) and W (rational powers).
class BiSeries {
public:
  using Key = std::pair<int, Rational>;
  struct Coef {
    cplx c;
    double mag;  // sum of magnitudes of contributions, for cancellation tests
  };

  BiSeries() = default;
  static BiSeries from_bipoly(const BiPoly& f);

  const std::map<Key, Coef>& terms() const { return terms_; }
  const std::optional<std::map<Key, GQ>>& exact() const { return exact_; }
  bool is_exact() const { return exact_.has_value(); }
  const QExt& trunc_order() const { return trunc_; }
  void set_trunc_order(const QExt& t) { trunc_ = t; }
  bool is_zero() const { return terms_.empty(); }

  cplx coeff(int i, const Rational& q) const;
  // Drops terms with q > t.
  BiSeries truncated(const QExt& t) const;
  BiSeries dZ() const;
  BiSeries dW() const;
  // Column i = 0: F(0, W) as (q, c) pairs ascending.
  std::vector<std::pair<Rational, cplx>> column(int i) const;
  long N() const;  // lcm of W-exponent denominators
  // Evaluate at (Z, W) with W = t^M.
  cplx eval_t(cplx Z, cplx t, long M) const;

  // Construction helpers used by substitution and the root solver.
  void add(int i, const Rational& q, cplx c, double mag);
  void add_exact(int i, const Rational& q, const GQ& c);
  // Removes numeric coefficients below rel_tol * mag.
  void clean(double rel_tol = 1e-12);
  void mark_exact(bool on);

  std::string str(int max_terms = 12) const;

private:
  std::map<Key, Coef> terms_;
  std::optional<std::map<Key, GQ>> exact_;
  QExt trunc_ = QExt::inf();
};

// F(Z, W) = f(Z + γ(W), W), certified for q <= trunc. Exact when γ is exact.
BiSeries substitute_shift(const BiPoly& f, const PuiseuxSeries& gamma, const QExt& trunc);
// Full finite expansion for the known part of γ, trunc order = γ's.
BiSeries substitute_shift_full(const BiPoly& f, const PuiseuxSeries& gamma);
// G(Z + c W^q, W) for a numeric or exact BiSeries G.
BiSeries shift_series(const BiSeries& G, cplx c, const std::optional<GQ>& exact_c,
                      const Rational& q);

// Numeric evaluation frame around a finite arc γ̂: polynomials in (Z, t)
// with W = t^M, so that curvature near the arc is evaluated without the
// cancellation of naive evaluation at z = γ̂(w) + Z.
class ShiftedFrame {
public:
  ShiftedFrame(const BiPoly& f, const PuiseuxSeries& gamma_hat, long extra_den = 1);

  struct Sample {
    cplx z, w;      // original coordinates
    cplx f, fz, fw;
    cplx FW;        // ∂_W of F(Z,W) = f_w + γ' f_z
    cplx delta;
    double G = 0;   // |f_z|² + |f_w|²
    double K = 0;
  };

  long M() const { return M_; }
  const PuiseuxSeries& gamma() const { return gamma_; }
  Sample sample(cplx Z, cplx t) const;
  // Logarithms of |grad f| and |Δ| at Z = u y^e, t = y^{1/M} (y > 0), in
  // extended range; log_delta is -inf when Δ vanishes.
  struct LogSample {
    double log_grad = 0;
    double log_delta = 0;
  };
  LogSample log_sample(cplx u, double e, double y) const;
  // Coefficients in Z of P(Z, t) - c at fixed t.
  std::vector<cplx> level_in_Z(cplx t, cplx c) const;
  // Coefficients in t of P(Z, t) - c at fixed Z.
  std::vector<cplx> level_in_t(cplx Z, cplx c) const;
  const CPoly2& P() const { return P_; }

private:
  PuiseuxSeries gamma_;
  long M_;
  CPoly2 P_, Pz_, Pw_, Pd_;
};

}  // namespace canyon
