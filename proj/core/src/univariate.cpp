#include "canyon/univariate.hpp"

#include "canyon/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace canyon {

UPoly UPoly::monomial(const GQ& a, int k) {
  std::vector<GQ> c(static_cast<std::size_t>(k) + 1);
  c[static_cast<std::size_t>(k)] = a;
  return UPoly(std::move(c));
}

void UPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

GQ UPoly::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return GQ();
  return c_[static_cast<std::size_t>(k)];
}

int UPoly::order() const {
  for (std::size_t k = 0; k < c_.size(); ++k)
    if (!c_[k].is_zero()) return static_cast<int>(k);
  return -1;
}

UPoly UPoly::derivative() const {
  if (c_.size() <= 1) return UPoly();
  std::vector<GQ> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k)
    d[k - 1] = c_[k] * GQ(Rational(static_cast<long>(k)));
  return UPoly(std::move(d));
}

UPoly UPoly::monic() const {
  if (c_.empty()) return *this;
  GQ l = lead();
  std::vector<GQ> d = c_;
  for (auto& x : d) x /= l;
  return UPoly(std::move(d));
}

GQ UPoly::eval(const GQ& x) const {
  GQ r;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
  return r;
}

cplx UPoly::eval(cplx x) const { return horner(to_complex(), x); }

std::vector<cplx> UPoly::to_complex() const {
  std::vector<cplx> out;
  out.reserve(c_.size());
  for (const auto& g : c_) out.push_back(g.to_complex());
  return out;
}

UPoly& UPoly::operator+=(const UPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

UPoly& UPoly::operator-=(const UPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return UPoly();
  std::vector<GQ> c(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return UPoly(std::move(c));
}

UPoly operator*(const GQ& s, const UPoly& a) {
  std::vector<GQ> c = a.c_;
  for (auto& x : c) x *= s;
  return UPoly(std::move(c));
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<GQ> r = a.coeffs();
  int db = b.degree();
  int da = a.degree();
  if (da < db) return {UPoly(), a};
  std::vector<GQ> q(static_cast<std::size_t>(da - db + 1));
  GQ lb = b.lead();
  for (int k = da; k >= db; --k) {
    GQ t = r[static_cast<std::size_t>(k)];
    if (t.is_zero()) continue;
    t /= lb;
    q[static_cast<std::size_t>(k - db)] = t;
    for (int j = 0; j <= db; ++j)
      r[static_cast<std::size_t>(k - db + j)] -= t * b.coeffs()[static_cast<std::size_t>(j)];
  }
  return {UPoly(std::move(q)), UPoly(std::move(r))};
}

UPoly exact_div(const UPoly& a, const UPoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw std::domain_error("inexact polynomial division");
  return q;
}

UPoly gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

std::vector<std::pair<UPoly, int>> squarefree(const UPoly& a) {
  std::vector<std::pair<UPoly, int>> out;
  if (a.degree() <= 0) return out;
  UPoly d = a.derivative();
  UPoly g = gcd(a, d);
  UPoly b = exact_div(a, g);
  UPoly c = exact_div(d, g);
  UPoly e = c - b.derivative();
  for (int k = 1; b.degree() > 0; ++k) {
    UPoly fk = gcd(b, e);
    if (fk.degree() > 0) out.emplace_back(fk, k);
    b = exact_div(b, fk);
    c = exact_div(e, fk);
    e = c - b.derivative();
  }
  return out;
}

cplx horner(const std::vector<cplx>& coeffs, cplx x) {
  cplx r = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) r = r * x + *it;
  return r;
}

namespace {

// p(x) and p'(x) together.
void horner2(const std::vector<cplx>& c, cplx x, cplx& p, cplx& dp) {
  p = 0;
  dp = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    dp = dp * x + p;
    p = p * x + *it;
  }
}

}  // namespace

std::vector<cplx> poly_roots(const std::vector<cplx>& coeffs_in,
                             const std::vector<cplx>* initial, int max_iter) {
  std::vector<cplx> c = coeffs_in;
  while (!c.empty() && c.back() == cplx(0)) c.pop_back();
  if (c.empty()) throw SolverDivergence("root finder called on zero polynomial");
  std::vector<cplx> roots;
  std::size_t lo = 0;
  while (lo < c.size() && c[lo] == cplx(0)) {
    roots.emplace_back(0.0);
    ++lo;
  }
  c.erase(c.begin(), c.begin() + static_cast<long>(lo));
  const int n = static_cast<int>(c.size()) - 1;
  if (n <= 0) return roots;
  if (n == 1) {
    roots.push_back(-c[0] / c[1]);
    return roots;
  }
  // Normalize to monic.
  cplx lead = c.back();
  for (auto& x : c) x /= lead;

  std::vector<cplx> z(static_cast<std::size_t>(n));
  if (initial && static_cast<int>(initial->size()) == n + static_cast<int>(lo)) {
    for (int k = 0; k < n; ++k) z[static_cast<std::size_t>(k)] = (*initial)[lo + static_cast<std::size_t>(k)];
    // break exact coincidences in warm starts
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < k; ++j)
        if (z[static_cast<std::size_t>(k)] == z[static_cast<std::size_t>(j)])
          z[static_cast<std::size_t>(k)] += cplx(1e-9, 1e-9) * (1.0 + std::abs(z[static_cast<std::size_t>(k)]));
  } else {
    // Fujiwara bound for the initial circle.
    double bound = 0;
    for (int k = 0; k < n; ++k) {
      double v = std::pow(std::abs(c[static_cast<std::size_t>(k)]), 1.0 / (n - k));
      if (k == 0) v *= std::pow(0.5, 1.0 / n);
      bound = std::max(bound, v);
    }
    double radius = 2.0 * bound;
    if (radius == 0) radius = 1;
    // geometric mean radius gives better starts for widely spread moduli
    double gm = std::pow(std::abs(c[0]), 1.0 / n);
    if (gm > 0 && gm < radius) radius = 0.5 * (gm + radius * 0.5);
    for (int k = 0; k < n; ++k) {
      double ang = 2 * std::numbers::pi * k / n + 0.4;
      z[static_cast<std::size_t>(k)] = std::polar(radius, ang);
    }
  }

  std::vector<bool> done(static_cast<std::size_t>(n), false);
  int converged = 0;
  for (int it = 0; it < max_iter && converged < n; ++it) {
    for (int k = 0; k < n; ++k) {
      auto ku = static_cast<std::size_t>(k);
      if (done[ku]) continue;
      cplx p, dp;
      horner2(c, z[ku], p, dp);
      if (p == cplx(0)) {
        done[ku] = true;
        ++converged;
        continue;
      }
      cplx ratio = p / dp;
      cplx sum = 0;
      for (int j = 0; j < n; ++j)
        if (j != k) sum += 1.0 / (z[ku] - z[static_cast<std::size_t>(j)]);
      cplx w = ratio / (1.0 - ratio * sum);
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) w = ratio;
      z[ku] -= w;
      if (std::abs(w) <= 4e-16 * std::abs(z[ku]) || std::abs(w) < 1e-300) {
        done[ku] = true;
        ++converged;
      }
    }
  }
  for (auto& v : z)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw SolverDivergence("simultaneous iteration produced non-finite roots");
  if (converged < n) {
    // accept if residuals are at rounding level
    for (int k = 0; k < n; ++k) {
      auto ku = static_cast<std::size_t>(k);
      if (done[ku]) continue;
      double scale = 0, az = std::abs(z[ku]), pw = 1;
      for (const auto& a : c) {
        scale += std::abs(a) * pw;
        pw *= az;
      }
      if (std::abs(horner(c, z[ku])) > 1e-8 * scale)
        throw SolverDivergence("simultaneous iteration did not converge (degree " +
                               std::to_string(n) + ")");
    }
  }
  roots.insert(roots.end(), z.begin(), z.end());
  return roots;
}

std::vector<ClusteredRoot> roots_with_multiplicity(const UPoly& p, double cluster_tol) {
  std::vector<ClusteredRoot> out;
  for (const auto& [factor, k] : squarefree(p)) {
    for (cplx r : poly_roots(factor.to_complex())) {
      bool merged = false;
      for (auto& cr : out) {
        double scale = std::max({1.0, std::abs(cr.z), std::abs(r)});
        if (std::abs(cr.z - r) <= cluster_tol * scale) {
          cr.mult += k;
          merged = true;
          break;
        }
      }
      if (!merged) out.push_back({r, k});
    }
  }
  std::sort(out.begin(), out.end(), [](const ClusteredRoot& a, const ClusteredRoot& b) {
    if (a.z.real() != b.z.real()) return a.z.real() < b.z.real();
    return a.z.imag() < b.z.imag();
  });
  return out;
}

}  // namespace canyon
