#include "canyon/series.hpp"

#include "canyon/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace canyon {

// ---------------------------------------------------------------- Puiseux

PuiseuxSeries::PuiseuxSeries(std::vector<PTerm> terms, QExt trunc)
    : terms_(std::move(terms)), trunc_(std::move(trunc)) {
  normalize();
}

PuiseuxSeries PuiseuxSeries::monomial(const GQ& c, const Rational& q, QExt trunc) {
  return PuiseuxSeries({PTerm{q, c.to_complex(), c}}, std::move(trunc));
}

PuiseuxSeries PuiseuxSeries::monomial(cplx c, const Rational& q, QExt trunc) {
  return PuiseuxSeries({PTerm{q, c, std::nullopt}}, std::move(trunc));
}

void PuiseuxSeries::normalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const PTerm& a, const PTerm& b) { return a.q < b.q; });
  std::vector<PTerm> out;
  for (auto& t : terms_) {
    if (!out.empty() && out.back().q == t.q) {
      auto& b = out.back();
      b.c += t.c;
      if (b.exact && t.exact) b.exact = *b.exact + *t.exact;
      else b.exact.reset();
    } else {
      out.push_back(t);
    }
  }
  terms_.clear();
  for (auto& t : out) {
    if (t.exact) {
      if (t.exact->is_zero()) continue;
      t.c = t.exact->to_complex();
    } else if (t.c == cplx(0)) {
      continue;
    }
    terms_.push_back(t);
  }
  N_ = 1;
  for (const auto& t : terms_) N_ = lcm_long(N_, den_long(t.q));
}

bool PuiseuxSeries::is_exact() const {
  if (!trunc_.infinite) return false;
  for (const auto& t : terms_)
    if (!t.exact) return false;
  return true;
}

QExt PuiseuxSeries::order() const {
  if (terms_.empty()) return QExt::inf();
  return QExt(terms_.front().q);
}

cplx PuiseuxSeries::eval(cplx y) const {
  if (y == cplx(0)) return 0;
  cplx t = std::pow(y, 1.0 / static_cast<double>(N_));
  return eval_t(t, N_);
}

cplx PuiseuxSeries::eval_t(cplx t, long M) const {
  cplx s = 0;
  for (const auto& term : terms_) {
    Rational e = term.q * M;
    s += term.c * std::pow(t, static_cast<int>(e.get_num().get_si()));
  }
  return s;
}

cplx PuiseuxSeries::deriv_t(cplx t, long M) const {
  cplx s = 0;
  for (const auto& term : terms_) {
    if (sgn(term.q) == 0) continue;
    Rational e = (term.q - 1) * M;
    s += term.c * term.q.get_d() * std::pow(t, static_cast<int>(e.get_num().get_si()));
  }
  return s;
}

PuiseuxSeries PuiseuxSeries::truncated_below(const Rational& e, bool inclusive) const {
  std::vector<PTerm> keep;
  for (const auto& t : terms_)
    if (t.q < e || (inclusive && t.q == e)) keep.push_back(t);
  return PuiseuxSeries(std::move(keep), QExt::inf());
}

PuiseuxSeries PuiseuxSeries::plus_monomial(cplx c, const Rational& q) const {
  std::vector<PTerm> t = terms_;
  t.push_back(PTerm{q, c, std::nullopt});
  return PuiseuxSeries(std::move(t), trunc_);
}

PuiseuxSeries PuiseuxSeries::conjugate(long k) const {
  std::vector<PTerm> out;
  for (const auto& t : terms_) {
    long n = Rational(t.q * N_).get_num().get_si();
    long idx = ((k % N_) * (n % N_)) % N_;
    if (idx < 0) idx += N_;
    PTerm c = t;
    double ang = 2 * std::numbers::pi * static_cast<double>(idx) / static_cast<double>(N_);
    if ((4 * idx) % N_ == 0) {
      long quarter = (4 * idx) / N_;  // θ^{kn} = i^quarter
      static const GQ units[4] = {GQ::integer(1), GQ(0, 1), GQ::integer(-1), GQ(0, -1)};
      const GQ& u = units[quarter % 4];
      if (c.exact) c.exact = *c.exact * u;
      c.c = t.c * u.to_complex();
    } else {
      c.exact.reset();
      c.c = t.c * std::polar(1.0, ang);
    }
    out.push_back(c);
  }
  return PuiseuxSeries(std::move(out), trunc_);
}

std::string PuiseuxSeries::str(int max_terms) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  os.precision(12);
  int n = 0;
  for (const auto& t : terms_) {
    if (n++ >= max_terms) {
      os << " + ...";
      break;
    }
    if (n > 1) os << " + ";
    if (t.exact) os << t.exact->str();
    else os << "(" << t.c.real() << (std::signbit(t.c.imag()) ? "-" : "+") << std::fabs(t.c.imag()) << "i)";
    os << "*w^" << t.q.get_str();
  }
  if (!trunc_.infinite) os << " + O(w^>" << trunc_.value.get_str() << ")";
  return os.str();
}

std::vector<PuiseuxSeries> conjugates(const PuiseuxSeries& gamma) {
  std::vector<PuiseuxSeries> out;
  for (long k = 0; k < gamma.N(); ++k) out.push_back(gamma.conjugate(k));
  return out;
}

namespace {

// Returns the first exponent where a and b differ; nullopt when they agree
// for every exponent up to `limit`.
std::optional<Rational> first_difference(const PuiseuxSeries& a, const PuiseuxSeries& b,
                                         const QExt& limit, double rel_tol) {
  std::map<Rational, std::pair<PTerm, PTerm>> merged;
  PTerm zero{0, 0, GQ()};
  for (const auto& t : a.terms()) merged.emplace(t.q, std::make_pair(t, zero)).first->second.first = t;
  for (const auto& t : b.terms()) {
    auto it = merged.find(t.q);
    if (it == merged.end()) merged.emplace(t.q, std::make_pair(zero, t));
    else it->second.second = t;
  }
  for (const auto& [q, pr] : merged) {
    if (!limit.infinite && q > limit.value) return std::nullopt;
    const PTerm& x = pr.first;
    const PTerm& y = pr.second;
    bool differ;
    if (x.exact && y.exact) {
      differ = !(*x.exact == *y.exact);
    } else {
      double d = std::abs(x.c - y.c);
      double s = std::max(std::abs(x.c), std::abs(y.c));
      differ = d > rel_tol * s && d > 0;
    }
    if (differ) return q;
  }
  return std::nullopt;
}

}  // namespace

QExt contact_order(const PuiseuxSeries& alpha, const PuiseuxSeries& beta, bool strict,
                   double rel_tol) {
  QExt limit = std::min(alpha.trunc_order(), beta.trunc_order());
  QExt best = QExt(Rational(0));
  bool have = false;
  for (long k = 0; k < beta.N(); ++k) {
    auto d = first_difference(alpha, beta.conjugate(k), limit, rel_tol);
    if (!d) {
      if (strict && !limit.infinite)
        throw IndeterminateAtTruncation("series agree up to truncation order " + limit.str());
      return QExt::inf();
    }
    if (!have || QExt(*d) > best) best = QExt(*d);
    have = true;
  }
  return best;
}

QExt direct_contact(const PuiseuxSeries& alpha, const PuiseuxSeries& beta, double rel_tol) {
  QExt limit = std::min(alpha.trunc_order(), beta.trunc_order());
  auto d = first_difference(alpha, beta, limit, rel_tol);
  return d ? QExt(*d) : QExt::inf();
}

ComplexPoint evaluate_arc(const PuiseuxSeries& gamma, cplx u, const Rational& e, cplx y) {
  long M = lcm_long(gamma.N(), den_long(e));
  cplx t = y == cplx(0) ? cplx(0) : std::pow(y, 1.0 / static_cast<double>(M));
  long k = Rational(e * M).get_num().get_si();
  cplx z = gamma.eval_t(t, M) + u * std::pow(t, static_cast<int>(k));
  return {z, y};
}

// --------------------------------------------------------------- BiSeries

BiSeries BiSeries::from_bipoly(const BiPoly& f) {
  BiSeries s;
  s.exact_.emplace();
  for (const auto& [k, c] : f.terms()) s.add_exact(k.first, Rational(k.second), c);
  return s;
}

cplx BiSeries::coeff(int i, const Rational& q) const {
  auto it = terms_.find({i, q});
  return it == terms_.end() ? cplx(0) : it->second.c;
}

void BiSeries::add(int i, const Rational& q, cplx c, double mag) {
  auto& slot = terms_[Key{i, q}];
  slot.c += c;
  slot.mag += mag;
}

void BiSeries::add_exact(int i, const Rational& q, const GQ& c) {
  if (!exact_) exact_.emplace();
  auto [it, ins] = exact_->emplace(Key{i, q}, c);
  if (!ins) it->second += c;
  if (it->second.is_zero()) {
    exact_->erase(it);
    terms_.erase(Key{i, q});
    return;
  }
  cplx v = it->second.to_complex();
  terms_[Key{i, q}] = Coef{v, std::abs(v)};
}

void BiSeries::mark_exact(bool on) {
  if (!on) exact_.reset();
  else if (!exact_) exact_.emplace();
}

void BiSeries::clean(double rel_tol) {
  if (exact_) {
    // numeric mirror follows the exact map
    std::map<Key, Coef> t;
    for (const auto& [k, c] : *exact_) {
      cplx v = c.to_complex();
      t.emplace(k, Coef{v, std::abs(v)});
    }
    terms_ = std::move(t);
    return;
  }
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (std::abs(it->second.c) <= rel_tol * it->second.mag || it->second.c == cplx(0))
      it = terms_.erase(it);
    else
      ++it;
  }
}

BiSeries BiSeries::truncated(const QExt& t) const {
  BiSeries r;
  r.trunc_ = std::min(t, trunc_);
  for (const auto& [k, c] : terms_)
    if (t.infinite || k.second <= t.value) r.terms_.emplace(k, c);
  if (exact_) {
    r.exact_.emplace();
    for (const auto& [k, c] : *exact_)
      if (t.infinite || k.second <= t.value) r.exact_->emplace(k, c);
  }
  return r;
}

BiSeries BiSeries::dZ() const {
  BiSeries r;
  r.trunc_ = trunc_;
  if (exact_) {
    r.exact_.emplace();
    for (const auto& [k, c] : *exact_)
      if (k.first > 0) r.add_exact(k.first - 1, k.second, c * GQ::integer(k.first));
    return r;
  }
  for (const auto& [k, c] : terms_)
    if (k.first > 0) r.add(k.first - 1, k.second, c.c * static_cast<double>(k.first), c.mag * k.first);
  return r;
}

BiSeries BiSeries::dW() const {
  BiSeries r;
  r.trunc_ = trunc_.infinite ? trunc_ : QExt(trunc_.value - 1);
  if (exact_) {
    r.exact_.emplace();
    for (const auto& [k, c] : *exact_)
      if (sgn(k.second) != 0) r.add_exact(k.first, k.second - 1, c * GQ(k.second));
    return r;
  }
  for (const auto& [k, c] : terms_)
    if (sgn(k.second) != 0) {
      double q = k.second.get_d();
      r.add(k.first, k.second - 1, c.c * q, c.mag * std::fabs(q));
    }
  return r;
}

std::vector<std::pair<Rational, cplx>> BiSeries::column(int i) const {
  std::vector<std::pair<Rational, cplx>> out;
  for (const auto& [k, c] : terms_)
    if (k.first == i) out.emplace_back(k.second, c.c);
  return out;
}

long BiSeries::N() const {
  long n = 1;
  for (const auto& [k, c] : terms_) n = lcm_long(n, den_long(k.second));
  return n;
}

cplx BiSeries::eval_t(cplx Z, cplx t, long M) const {
  cplx s = 0;
  for (const auto& [k, c] : terms_) {
    long e = Rational(k.second * M).get_num().get_si();
    s += c.c * std::pow(Z, k.first) * std::pow(t, static_cast<int>(e));
  }
  return s;
}

std::string BiSeries::str(int max_terms) const {
  std::ostringstream os;
  os.precision(10);
  int n = 0;
  for (const auto& [k, c] : terms_) {
    if (n++ >= max_terms) {
      os << " + ...";
      break;
    }
    if (n > 1) os << " + ";
    os << "(" << c.c.real() << (std::signbit(c.c.imag()) ? "-" : "+") << std::fabs(c.c.imag()) << "i)Z^" << k.first
       << "W^" << k.second.get_str();
  }
  if (n == 0) os << "0";
  return os.str();
}

namespace {

double binom(int n, int k) {
  double r = 1;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

long binom_l(int n, int k) {
  long r = 1;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

}  // namespace

BiSeries substitute_shift_full(const BiPoly& f, const PuiseuxSeries& gamma) {
  bool exact = true;
  for (const auto& t : gamma.terms())
    if (!t.exact) exact = false;
  int dz = std::max(f.deg_z(), 0);
  BiSeries F;
  F.set_trunc_order(gamma.trunc_order());
  if (exact) {
    F.mark_exact(true);
    std::vector<std::map<Rational, GQ>> pw(static_cast<std::size_t>(dz) + 1);
    pw[0][Rational(0)] = GQ::integer(1);
    for (int k = 1; k <= dz; ++k)
      for (const auto& [q, c] : pw[static_cast<std::size_t>(k) - 1])
        for (const auto& t : gamma.terms()) {
          auto& slot = pw[static_cast<std::size_t>(k)][q + t.q];
          slot += c * *t.exact;
        }
    for (auto& m : pw)
      for (auto it = m.begin(); it != m.end();) it = it->second.is_zero() ? m.erase(it) : std::next(it);
    for (const auto& [key, a] : f.terms()) {
      int i = key.first;
      for (int k = 0; k <= i; ++k) {
        GQ b = a * GQ::integer(binom_l(i, k));
        for (const auto& [q, c] : pw[static_cast<std::size_t>(i - k)])
          F.add_exact(k, q + key.second, b * c);
      }
    }
    F.clean();
    return F;
  }
  struct NC {
    cplx c;
    double mag;
  };
  std::vector<std::map<Rational, NC>> pw(static_cast<std::size_t>(dz) + 1);
  pw[0][Rational(0)] = NC{1.0, 1.0};
  for (int k = 1; k <= dz; ++k)
    for (const auto& [q, c] : pw[static_cast<std::size_t>(k) - 1])
      for (const auto& t : gamma.terms()) {
        auto& slot = pw[static_cast<std::size_t>(k)][q + t.q];
        slot.c += c.c * t.c;
        slot.mag += c.mag * std::abs(t.c);
      }
  for (const auto& [key, a] : f.terms()) {
    int i = key.first;
    cplx ac = a.to_complex();
    for (int k = 0; k <= i; ++k) {
      double b = binom(i, k);
      for (const auto& [q, c] : pw[static_cast<std::size_t>(i - k)])
        F.add(k, q + key.second, ac * b * c.c, std::abs(ac) * b * c.mag);
    }
  }
  F.clean();
  return F;
}

BiSeries substitute_shift(const BiPoly& f, const PuiseuxSeries& gamma, const QExt& trunc) {
  if (gamma.order() < QExt(Rational(1)))
    throw PreconditionViolation("substitute_shift: arc must have order >= 1");
  if (trunc > gamma.trunc_order())
    throw InsufficientTruncation("substitute_shift: requested depth " + trunc.str() +
                                 " exceeds the arc's truncation order " +
                                 gamma.trunc_order().str());
  return substitute_shift_full(f, gamma).truncated(trunc);
}

BiSeries shift_series(const BiSeries& G, cplx c, const std::optional<GQ>& exact_c,
                      const Rational& q) {
  BiSeries r;
  r.set_trunc_order(G.trunc_order());
  if (G.is_exact() && exact_c) {
    r.mark_exact(true);
    int maxi = 0;
    for (const auto& [k, v] : *G.exact()) maxi = std::max(maxi, k.first);
    std::vector<GQ> cp(static_cast<std::size_t>(maxi) + 1);
    cp[0] = GQ::integer(1);
    for (int k = 1; k <= maxi; ++k) cp[static_cast<std::size_t>(k)] = cp[static_cast<std::size_t>(k) - 1] * *exact_c;
    for (const auto& [key, v] : *G.exact()) {
      int i = key.first;
      for (int k = 0; k <= i; ++k)
        r.add_exact(k, key.second + q * (i - k), v * GQ::integer(binom_l(i, k)) * cp[static_cast<std::size_t>(i - k)]);
    }
    r.clean();
    return r;
  }
  for (const auto& [key, v] : G.terms()) {
    int i = key.first;
    cplx cp = 1;
    double ap = 1;
    // iterate k from i down to 0 so that c^{i-k} grows incrementally
    for (int k = i; k >= 0; --k) {
      double b = binom(i, k);
      r.add(k, key.second + q * (i - k), v.c * b * cp, v.mag * b * ap);
      cp *= c;
      ap *= std::abs(c);
    }
  }
  r.clean();
  return r;
}

// ----------------------------------------------------------- ShiftedFrame

namespace {

CPoly2 to_t_poly(const BiSeries& s, long M) {
  std::vector<std::vector<cplx>> c;
  for (const auto& [k, v] : s.terms()) {
    Rational e = k.second * M;
    if (e.get_den() != 1 || sgn(e) < 0)
      throw std::logic_error("shifted frame: exponent not integral in t");
    long ei = e.get_num().get_si();
    if (static_cast<int>(c.size()) <= k.first) c.resize(static_cast<std::size_t>(k.first) + 1);
    auto& row = c[static_cast<std::size_t>(k.first)];
    if (static_cast<long>(row.size()) <= ei) row.resize(static_cast<std::size_t>(ei) + 1);
    row[static_cast<std::size_t>(ei)] += v.c;
  }
  return CPoly2(std::move(c));
}

}  // namespace

ShiftedFrame::ShiftedFrame(const BiPoly& f, const PuiseuxSeries& gamma_hat, long extra_den)
    : gamma_(PuiseuxSeries(gamma_hat.terms(), QExt::inf())),
      M_(lcm_long(gamma_hat.N(), extra_den)) {
  P_ = to_t_poly(substitute_shift_full(f, gamma_), M_);
  Pz_ = to_t_poly(substitute_shift_full(f.dz(), gamma_), M_);
  Pw_ = to_t_poly(substitute_shift_full(f.dw(), gamma_), M_);
  Pd_ = to_t_poly(substitute_shift_full(delta_poly(f), gamma_), M_);
}

ShiftedFrame::Sample ShiftedFrame::sample(cplx Z, cplx t) const {
  Sample s;
  s.w = std::pow(t, static_cast<int>(M_));
  s.z = Z + gamma_.eval_t(t, M_);
  s.f = P_.eval(Z, t);
  s.fz = Pz_.eval(Z, t);
  s.fw = Pw_.eval(Z, t);
  s.FW = s.fw + gamma_.deriv_t(t, M_) * s.fz;
  s.delta = Pd_.eval(Z, t);
  s.G = std::norm(s.fz) + std::norm(s.fw);
  s.K = s.G > 0 ? 2.0 * std::norm(s.delta) / (s.G * s.G * s.G) : INFINITY;
  return s;
}

ShiftedFrame::LogSample ShiftedFrame::log_sample(cplx u, double e, double y) const {
  long double ly = std::log(static_cast<long double>(y));
  cplxl Z = cplxl(u) * std::exp(static_cast<long double>(e) * ly);
  cplxl t = std::exp(ly / static_cast<long double>(M_));
  cplxl fz = Pz_.eval(Z, t), fw = Pw_.eval(Z, t), d = Pd_.eval(Z, t);
  LogSample s;
  s.log_grad = static_cast<double>(0.5L * std::log(std::norm(fz) + std::norm(fw)));
  s.log_delta = static_cast<double>(std::log(std::abs(d)));
  return s;
}

std::vector<cplx> ShiftedFrame::level_in_Z(cplx t, cplx c) const {
  auto v = P_.in_x(t);
  if (v.empty()) v.push_back(0);
  v[0] -= c;
  return v;
}

std::vector<cplx> ShiftedFrame::level_in_t(cplx Z, cplx c) const {
  auto v = P_.in_y(Z);
  if (v.empty()) v.push_back(0);
  v[0] -= c;
  return v;
}

}  // namespace canyon
