#include "canyon/bipoly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace canyon {

BiPoly BiPoly::constant(const GQ& c) { return monomial(c, 0, 0); }
BiPoly BiPoly::z() { return monomial(GQ::integer(1), 1, 0); }
BiPoly BiPoly::w() { return monomial(GQ::integer(1), 0, 1); }

BiPoly BiPoly::monomial(const GQ& c, int i, int j) {
  BiPoly p;
  p.add_term(i, j, c);
  return p;
}

GQ BiPoly::coeff(int i, int j) const {
  auto it = t_.find({i, j});
  return it == t_.end() ? GQ() : it->second;
}

void BiPoly::add_term(int i, int j, const GQ& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = t_.emplace(Key{i, j}, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }
}

int BiPoly::order() const {
  int o = -1;
  for (const auto& [k, c] : t_) {
    int d = k.first + k.second;
    if (o < 0 || d < o) o = d;
  }
  return o;
}

int BiPoly::degree() const {
  int d = -1;
  for (const auto& [k, c] : t_) d = std::max(d, k.first + k.second);
  return d;
}

int BiPoly::deg_z() const {
  int d = -1;
  for (const auto& [k, c] : t_) d = std::max(d, k.first);
  return d;
}

int BiPoly::deg_w() const {
  int d = -1;
  for (const auto& [k, c] : t_) d = std::max(d, k.second);
  return d;
}

double BiPoly::coeff_magnitude() const {
  double s = 0;
  for (const auto& [k, c] : t_) s += std::abs(c.to_complex());
  return s;
}

bool BiPoly::is_constant() const {
  return t_.empty() || (t_.size() == 1 && t_.begin()->first == Key{0, 0});
}

BiPoly BiPoly::dz() const {
  BiPoly r;
  for (const auto& [k, c] : t_)
    if (k.first > 0) r.add_term(k.first - 1, k.second, c * GQ::integer(k.first));
  return r;
}

BiPoly BiPoly::dw() const {
  BiPoly r;
  for (const auto& [k, c] : t_)
    if (k.second > 0) r.add_term(k.first, k.second - 1, c * GQ::integer(k.second));
  return r;
}

BiPoly BiPoly::homogeneous(int d) const {
  BiPoly r;
  for (const auto& [k, c] : t_)
    if (k.first + k.second == d) r.add_term(k.first, k.second, c);
  return r;
}

std::vector<UPoly> BiPoly::as_poly_in_z() const {
  int dz = deg_z();
  std::vector<std::vector<GQ>> raw(static_cast<std::size_t>(std::max(dz + 1, 0)));
  for (const auto& [k, c] : t_) {
    auto& v = raw[static_cast<std::size_t>(k.first)];
    if (static_cast<int>(v.size()) <= k.second) v.resize(static_cast<std::size_t>(k.second) + 1);
    v[static_cast<std::size_t>(k.second)] = c;
  }
  std::vector<UPoly> out;
  out.reserve(raw.size());
  for (auto& v : raw) out.emplace_back(std::move(v));
  return out;
}

BiPoly BiPoly::from_poly_in_z(const std::vector<UPoly>& c) {
  BiPoly r;
  for (std::size_t i = 0; i < c.size(); ++i)
    for (int j = 0; j <= c[i].degree(); ++j)
      r.add_term(static_cast<int>(i), j, c[i].coeff(j));
  return r;
}

UPoly BiPoly::at_w_one() const {
  std::vector<GQ> v(static_cast<std::size_t>(std::max(deg_z() + 1, 0)));
  for (const auto& [k, c] : t_) v[static_cast<std::size_t>(k.first)] += c;
  return UPoly(std::move(v));
}

UPoly BiPoly::at_w_zero() const {
  std::vector<GQ> v(static_cast<std::size_t>(std::max(deg_z() + 1, 0)));
  for (const auto& [k, c] : t_)
    if (k.second == 0) v[static_cast<std::size_t>(k.first)] += c;
  return UPoly(std::move(v));
}

cplx BiPoly::eval(cplx z, cplx w) const {
  cplx s = 0;
  for (const auto& [k, c] : t_)
    s += c.to_complex() * std::pow(z, k.first) * std::pow(w, k.second);
  return s;
}

GQ BiPoly::eval(const GQ& z, const GQ& w) const {
  GQ s;
  for (const auto& [k, c] : t_)
    s += c * pow(z, static_cast<unsigned>(k.first)) * pow(w, static_cast<unsigned>(k.second));
  return s;
}

BiPoly BiPoly::compose_linear(const std::array<GQ, 4>& U) const {
  BiPoly zp = BiPoly::monomial(U[0], 1, 0) + BiPoly::monomial(U[1], 0, 1);
  BiPoly wp = BiPoly::monomial(U[2], 1, 0) + BiPoly::monomial(U[3], 0, 1);
  int dz = std::max(deg_z(), 0), dw = std::max(deg_w(), 0);
  std::vector<BiPoly> zpow(static_cast<std::size_t>(dz) + 1), wpow(static_cast<std::size_t>(dw) + 1);
  zpow[0] = wpow[0] = BiPoly::constant(GQ::integer(1));
  for (int k = 1; k <= dz; ++k) zpow[static_cast<std::size_t>(k)] = zpow[static_cast<std::size_t>(k) - 1] * zp;
  for (int k = 1; k <= dw; ++k) wpow[static_cast<std::size_t>(k)] = wpow[static_cast<std::size_t>(k) - 1] * wp;
  BiPoly r;
  for (const auto& [k, c] : t_)
    r += c * (zpow[static_cast<std::size_t>(k.first)] * wpow[static_cast<std::size_t>(k.second)]);
  return r;
}

BiPoly BiPoly::swap_zw() const {
  BiPoly r;
  for (const auto& [k, c] : t_) r.add_term(k.second, k.first, c);
  return r;
}

BiPoly& BiPoly::operator+=(const BiPoly& o) {
  for (const auto& [k, c] : o.t_) add_term(k.first, k.second, c);
  return *this;
}

BiPoly& BiPoly::operator-=(const BiPoly& o) {
  for (const auto& [k, c] : o.t_) add_term(k.first, k.second, -c);
  return *this;
}

BiPoly operator-(const BiPoly& a) {
  BiPoly r;
  for (const auto& [k, c] : a.t_) r.add_term(k.first, k.second, -c);
  return r;
}

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
  BiPoly r;
  for (const auto& [ka, ca] : a.t_)
    for (const auto& [kb, cb] : b.t_)
      r.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
  return r;
}

BiPoly operator*(const GQ& s, const BiPoly& a) {
  BiPoly r;
  if (s.is_zero()) return r;
  for (const auto& [k, c] : a.t_) r.add_term(k.first, k.second, s * c);
  return r;
}

std::string BiPoly::str() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // descending total degree, then descending z power
  std::vector<std::pair<Key, GQ>> v(t_.begin(), t_.end());
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
    int da = a.first.first + a.first.second, db = b.first.first + b.first.second;
    if (da != db) return da < db;
    return a.first.first > b.first.first;
  });
  for (const auto& [k, c] : v) {
    bool neg = sgn(c.im) == 0 && sgn(c.re) < 0;
    GQ a = neg ? -c : c;
    if (!first) os << (neg ? " - " : " + ");
    else if (neg) os << "-";
    first = false;
    bool unit = a == GQ::integer(1);
    bool mono = k.first > 0 || k.second > 0;
    if (!unit || !mono) {
      os << a.str();
      if (mono) os << "*";
    }
    if (k.first > 0) {
      os << "z";
      if (k.first > 1) os << "^" << k.first;
      if (k.second > 0) os << "*";
    }
    if (k.second > 0) {
      os << "w";
      if (k.second > 1) os << "^" << k.second;
    }
  }
  return os.str();
}

BiPoly pow(const BiPoly& a, unsigned k) {
  BiPoly r = BiPoly::constant(GQ::integer(1)), b = a;
  while (k) {
    if (k & 1u) r = r * b;
    k >>= 1u;
    if (k) b = b * b;
  }
  return r;
}

bool try_exact_div(const BiPoly& a_in, const BiPoly& b, BiPoly& q) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  q = BiPoly();
  BiPoly a = a_in;
  auto lb = *b.terms().rbegin();
  while (!a.is_zero()) {
    auto la = *a.terms().rbegin();
    int di = la.first.first - lb.first.first;
    int dj = la.first.second - lb.first.second;
    if (di < 0 || dj < 0) return false;
    BiPoly t = BiPoly::monomial(la.second / lb.second, di, dj);
    q += t;
    a -= t * b;
  }
  return true;
}

namespace {

UPoly content(const std::vector<UPoly>& c) {
  UPoly g;
  for (const auto& x : c) {
    g = gcd(g, x);
    if (g.degree() == 0) break;
  }
  return g;
}

std::vector<UPoly> primitive(const std::vector<UPoly>& c) {
  UPoly g = content(c);
  std::vector<UPoly> out;
  for (const auto& x : c) out.push_back(g.is_zero() ? x : exact_div(x, g));
  return out;
}

void trim(std::vector<UPoly>& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

// lc(b)^k a mod b over K[w][z], sparse variant.
std::vector<UPoly> prem(std::vector<UPoly> a, const std::vector<UPoly>& b) {
  trim(a);
  int db = static_cast<int>(b.size()) - 1;
  const UPoly& lb = b.back();
  while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
    int da = static_cast<int>(a.size()) - 1;
    UPoly la = a.back();
    for (auto& x : a) x = lb * x;
    for (int j = 0; j <= db; ++j)
      a[static_cast<std::size_t>(da - db + j)] -= la * b[static_cast<std::size_t>(j)];
    trim(a);
  }
  return a;
}

BiPoly normalize(const BiPoly& p) {
  if (p.is_zero()) return p;
  auto c = p.as_poly_in_z();
  GQ l = c.back().lead();
  return (GQ::integer(1) / l) * p;
}

}  // namespace

BiPoly gcd(const BiPoly& A, const BiPoly& B) {
  if (A.is_zero()) return normalize(B);
  if (B.is_zero()) return normalize(A);
  auto ca = A.as_poly_in_z(), cb = B.as_poly_in_z();
  UPoly cont = gcd(content(ca), content(cb));
  auto a = primitive(ca), b = primitive(cb);
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    if (b.size() == 1) {  // degree 0 in z: gcd is free of z
      a = {UPoly::constant(GQ::integer(1))};
      break;
    }
    auto r = prem(a, b);
    a = std::move(b);
    b = r.empty() ? r : primitive(r);
  }
  std::vector<UPoly> g;
  for (const auto& x : a) g.push_back(cont * x);
  return normalize(BiPoly::from_poly_in_z(g));
}

std::vector<std::pair<BiPoly, int>> squarefree_z(const BiPoly& f) {
  std::vector<std::pair<BiPoly, int>> out;
  if (f.deg_z() <= 0) return out;
  auto div = [](const BiPoly& a, const BiPoly& b) {
    BiPoly q;
    if (!try_exact_div(a, b, q)) throw std::logic_error("square-free decomposition: inexact division");
    return q;
  };
  BiPoly d = f.dz();
  BiPoly g = gcd(f, d);
  BiPoly b = div(f, g);
  BiPoly c = div(d, g);
  BiPoly e = c - b.dz();
  for (int k = 1; b.deg_z() > 0; ++k) {
    BiPoly fk = gcd(b, e);
    if (fk.deg_z() > 0) out.emplace_back(fk, k);
    b = div(b, fk);
    c = div(e, fk);
    e = c - b.dz();
  }
  return out;
}

BiPoly delta_poly(const BiPoly& f) {
  BiPoly fz = f.dz(), fw = f.dw();
  BiPoly fzz = fz.dz(), fzw = fz.dw(), fww = fw.dw();
  return GQ::integer(2) * (fz * fw * fzw) - fzz * fw * fw - fww * fz * fz;
}

CPoly2::CPoly2(std::vector<std::vector<cplx>> c) : c_(std::move(c)) {
  while (!c_.empty() && c_.back().empty()) c_.pop_back();
}

CPoly2 CPoly2::from(const BiPoly& f) {
  std::vector<std::vector<cplx>> c(static_cast<std::size_t>(std::max(f.deg_z() + 1, 0)));
  for (const auto& [k, v] : f.terms()) {
    auto& row = c[static_cast<std::size_t>(k.first)];
    if (static_cast<int>(row.size()) <= k.second) row.resize(static_cast<std::size_t>(k.second) + 1);
    row[static_cast<std::size_t>(k.second)] = v.to_complex();
  }
  return CPoly2(std::move(c));
}

int CPoly2::deg_y() const {
  int d = -1;
  for (const auto& r : c_) d = std::max(d, static_cast<int>(r.size()) - 1);
  return d;
}

cplx CPoly2::eval(cplx x, cplx y) const {
  cplx s = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) s = s * x + horner(*it, y);
  return s;
}

cplxl CPoly2::eval(cplxl x, cplxl y) const {
  cplxl s = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    cplxl r = 0;
    for (auto jt = it->rbegin(); jt != it->rend(); ++jt) r = r * y + cplxl(*jt);
    s = s * x + r;
  }
  return s;
}

CPoly2 CPoly2::dx() const {
  std::vector<std::vector<cplx>> d;
  for (std::size_t i = 1; i < c_.size(); ++i) {
    d.push_back(c_[i]);
    for (auto& v : d.back()) v *= static_cast<double>(i);
  }
  return CPoly2(std::move(d));
}

CPoly2 CPoly2::dy() const {
  std::vector<std::vector<cplx>> d;
  for (const auto& r : c_) {
    std::vector<cplx> row;
    for (std::size_t k = 1; k < r.size(); ++k) row.push_back(r[k] * static_cast<double>(k));
    d.push_back(std::move(row));
  }
  return CPoly2(std::move(d));
}

std::vector<cplx> CPoly2::in_x(cplx y) const {
  std::vector<cplx> out;
  out.reserve(c_.size());
  for (const auto& r : c_) out.push_back(horner(r, y));
  return out;
}

std::vector<cplx> CPoly2::in_y(cplx x) const {
  std::vector<cplx> out(static_cast<std::size_t>(std::max(deg_y() + 1, 0)));
  cplx p = 1;
  for (const auto& r : c_) {
    for (std::size_t k = 0; k < r.size(); ++k) out[k] += r[k] * p;
    p *= x;
  }
  return out;
}

// Fraction-free determinant over Q(i)[w].
UPoly bareiss_det(std::vector<std::vector<UPoly>> a) {
  const std::size_t n = a.size();
  if (n == 0) return UPoly::constant(GQ(1));
  UPoly prev = UPoly::constant(GQ(1));
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k].is_zero()) {
      std::size_t r = k + 1;
      while (r < n && a[r][k].is_zero()) ++r;
      if (r == n) return UPoly();
      std::swap(a[k], a[r]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        a[i][j] = exact_div(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev);
      a[i][k] = UPoly();
    }
    prev = a[k][k];
  }
  UPoly d = a[n - 1][n - 1];
  return negate ? GQ(-1) * d : d;
}


UPoly resultant_z(const BiPoly& a, const BiPoly& b) {
  auto pa = a.as_poly_in_z(), pb = b.as_poly_in_z();
  const int p = static_cast<int>(pa.size()) - 1, q = static_cast<int>(pb.size()) - 1;
  if (p < 0 || q < 0) return UPoly();
  const auto n = static_cast<std::size_t>(p + q);
  std::vector<std::vector<UPoly>> S(n, std::vector<UPoly>(n));
  // rows: q shifts of a, p shifts of b; coefficients high to low
  for (int r = 0; r < q; ++r)
    for (int k = 0; k <= p; ++k)
      S[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + k)] = pa[static_cast<std::size_t>(p - k)];
  for (int r = 0; r < p; ++r)
    for (int k = 0; k <= q; ++k)
      S[static_cast<std::size_t>(q + r)][static_cast<std::size_t>(r + k)] = pb[static_cast<std::size_t>(q - k)];
  return bareiss_det(std::move(S));
}

}  // namespace canyon
