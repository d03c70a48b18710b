#include "canyon/puiseux.hpp"

#include "canyon/errors.hpp"
#include "canyon/leading_form.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace canyon {

namespace {

struct EdgeRoot {
  cplx x;
  std::optional<GQ> exact;
  int mult;
};

std::vector<EdgeRoot> edge_roots(const BiSeries& G, const Edge& e, const SolverOptions& opt) {
  int i1 = e.left.i;
  int width = e.right.i - e.left.i;
  Rational level = e.left.q + e.coslope * i1;
  std::vector<EdgeRoot> out;
  if (G.is_exact()) {
    std::vector<GQ> c(static_cast<std::size_t>(width) + 1);
    for (const auto& [k, v] : *G.exact())
      if (k.first >= i1 && k.first <= e.right.i && k.second + e.coslope * k.first == level)
        c[static_cast<std::size_t>(k.first - i1)] = v;
    UPoly Q(std::move(c));
    for (const auto& cr : roots_with_multiplicity(Q)) {
      EdgeRoot r{cr.z, std::nullopt, cr.mult};
      GQ cand = rationalize(cr.z, opt.max_den);
      if (!cand.is_zero() && Q.eval(cand).is_zero()) {
        r.exact = cand;
        r.x = cand.to_complex();
      }
      out.push_back(r);
    }
    return out;
  }
  std::vector<cplx> c(static_cast<std::size_t>(width) + 1);
  for (const auto& [k, v] : G.terms())
    if (k.first >= i1 && k.first <= e.right.i && k.second + e.coslope * k.first == level)
      c[static_cast<std::size_t>(k.first - i1)] = v.c;
  std::vector<cplx> roots = poly_roots(c);
  std::vector<std::vector<cplx>> groups;
  for (cplx r : roots) {
    bool merged = false;
    for (auto& g : groups) {
      double s = std::max({1.0, std::abs(g[0]), std::abs(r)});
      if (std::abs(g[0] - r) <= opt.cluster_tol * s) {
        g.push_back(r);
        merged = true;
        break;
      }
    }
    if (!merged) groups.push_back({r});
  }
  for (auto& g : groups) {
    cplx mean = 0;
    for (cplx r : g) mean += r;
    mean /= static_cast<double>(g.size());
    int mu = static_cast<int>(g.size());
    if (mu > 1) {
      // the cluster centre is a simple root of Q^{(mu-1)}
      std::vector<cplx> d = c;
      for (int k = 0; k < mu - 1; ++k) {
        std::vector<cplx> nd;
        for (std::size_t j = 1; j < d.size(); ++j) nd.push_back(d[j] * static_cast<double>(j));
        d = nd;
      }
      std::vector<cplx> dd;
      for (std::size_t j = 1; j < d.size(); ++j) dd.push_back(d[j] * static_cast<double>(j));
      for (int it = 0; it < 50; ++it) {
        cplx den = horner(dd, mean);
        if (den == cplx(0)) break;
        cplx step = horner(d, mean) / den;
        mean -= step;
        if (std::abs(step) < 1e-16 * std::max(1.0, std::abs(mean))) break;
      }
    }
    out.push_back({mean, std::nullopt, mu});
  }
  return out;
}

struct Expander {
  Rational trunc;
  const SolverOptions& opt;
  std::vector<PuiseuxSeries> roots;

  void emit(const std::vector<PTerm>& prefix, QExt t) { roots.emplace_back(prefix, t); }

  void expand(const BiSeries& G, std::vector<PTerm> prefix, const Rational& last_q, int expected,
              int depth) {
    if (depth > 4096) throw SolverDivergence("Newton-Puiseux recursion too deep");
    if (G.is_zero()) throw SolverDivergence("shifted polynomial vanished identically");
    NewtonPolygon P = build_polygon(G);
    int k0 = P.vertices.front().i;
    int found = 0;
    if (k0 > 0) {
      if (k0 > 1) {
        if (G.is_exact()) throw std::logic_error("repeated root inside a square-free factor");
        throw SolverDivergence("numerically unseparated roots (Z^" + std::to_string(k0) +
                               " factor)");
      }
      emit(prefix, G.is_exact() ? QExt::inf() : QExt(trunc));
      found += k0;
    }
    for (const Edge& e : P.edges) {
      if (e.coslope <= last_q) continue;
      int width = e.right.i - e.left.i;
      found += width;
      if (e.coslope > trunc) {
        if (width > 1)
          throw InsufficientTruncation("roots not separated below truncation order " +
                                       trunc.get_str());
        emit(prefix, QExt(trunc));
        continue;
      }
      for (const EdgeRoot& r : edge_roots(G, e, opt)) {
        BiSeries G2 = shift_series(G, r.x, r.exact, e.coslope);
        auto p2 = prefix;
        p2.push_back(PTerm{e.coslope, r.x, r.exact});
        expand(G2, std::move(p2), e.coslope, r.mult, depth + 1);
      }
    }
    if (expected >= 0 && found != expected)
      throw SolverDivergence("root count mismatch in Newton-Puiseux step: expected " +
                             std::to_string(expected) + ", found " + std::to_string(found));
  }
};

double principal_key(const PuiseuxSeries& s) {
  for (const auto& t : s.terms())
    if (t.q.get_den() != 1) {
      double a = std::arg(t.c);
      if (a < -1e-12) a += 2 * std::numbers::pi;
      return std::max(a, 0.0);
    }
  return 0;
}

bool bundle_less(const RootBundle& a, const RootBundle& b) {
  QExt oa = a.series.order(), ob = b.series.order();
  if (oa.infinite != ob.infinite) return oa.infinite;
  if (oa != ob) return oa < ob;
  // compare coefficients term by term: larger real part first, then imag
  const auto& ta = a.series.terms();
  const auto& tb = b.series.terms();
  for (std::size_t k = 0; k < std::min(ta.size(), tb.size()); ++k) {
    if (ta[k].q != tb[k].q) return ta[k].q < tb[k].q;
    double dr = ta[k].c.real() - tb[k].c.real();
    if (std::fabs(dr) > 1e-9) return dr > 0;
    double di = ta[k].c.imag() - tb[k].c.imag();
    if (std::fabs(di) > 1e-9) return di > 0;
  }
  return ta.size() < tb.size();
}

}  // namespace

std::vector<RootBundle> newton_puiseux_roots(const BiPoly& g, const Rational& trunc,
                                             const SolverOptions& opt) {
  if (g.deg_z() < 1) throw PreconditionViolation("newton_puiseux_roots: deg_z g < 1");
  if (g.at_w_zero().is_zero())
    throw PreconditionViolation("newton_puiseux_roots: g(z,0) vanishes (not regular in z)");
  std::vector<RootBundle> out;
  for (const auto& [factor, k] : squarefree_z(g)) {
    int expected = factor.at_w_zero().order();
    if (expected <= 0) continue;  // factor is a unit at the origin
    Expander ex{trunc, opt, {}};
    ex.expand(BiSeries::from_bipoly(factor), {}, Rational(0), expected, 0);
    std::vector<bool> used(ex.roots.size(), false);
    for (std::size_t i = 0; i < ex.roots.size(); ++i) {
      if (used[i]) continue;
      const PuiseuxSeries& s = ex.roots[i];
      std::vector<std::size_t> cls{i};
      used[i] = true;
      for (long c = 1; c < s.N(); ++c) {
        PuiseuxSeries conj = s.conjugate(c);
        bool hit = false;
        for (std::size_t j = 0; j < ex.roots.size(); ++j) {
          if (used[j]) continue;
          if (contact_order(conj, ex.roots[j], false, 1e-7).infinite) {
            used[j] = true;
            cls.push_back(j);
            hit = true;
            break;
          }
        }
        if (!hit) throw SolverDivergence("incomplete conjugate class for " + s.str());
      }
      std::size_t rep = cls[0];
      for (std::size_t j : cls)
        if (principal_key(ex.roots[j]) < principal_key(ex.roots[rep]) - 1e-12) rep = j;
      RootBundle b;
      b.series = ex.roots[rep];
      b.multiplicity = k;
      b.class_size = static_cast<int>(s.N());
      out.push_back(b);
    }
  }
  std::sort(out.begin(), out.end(), bundle_less);
  return out;
}

HValue h_value(const BiPoly& f, const PuiseuxSeries& gamma, bool gamma_is_polar) {
  BiSeries F = substitute_shift_full(f, gamma);
  QExt limit = gamma.trunc_order();
  if (!limit.infinite && gamma_is_polar) limit = QExt(limit.value * 2);
  HValue r;
  auto col = F.column(0);
  if (col.empty() || (!limit.infinite && col.front().first > limit.value)) {
    if (limit.infinite) {
      r.h = QExt::inf();
      r.a = 0;
      return r;
    }
    throw IndeterminateAtTruncation("f(γ(y),y) vanishes up to certified order " + limit.str());
  }
  r.h = QExt(col.front().first);
  r.a = col.front().second;
  if (F.is_exact()) r.a_exact = F.exact()->at({0, col.front().first});
  return r;
}

Rational default_trunc(const std::vector<PolarRecord>& ps) {
  Rational maxh = 0;
  for (const auto& p : ps)
    if (!p.h.infinite && p.h.value > maxh) maxh = p.h.value;
  return 2 * (1 + maxh);
}

std::vector<PolarRecord> polars(const BiPoly& f, std::optional<Rational> trunc) {
  if (f.order() < 2) throw PreconditionViolation("polars: O(f) < 2");
  if (!is_mini_regular(f)) throw NotMiniRegular("polars: f is not mini-regular in z");
  BiPoly fz = f.dz();
  auto build = [&](const Rational& T) {
    std::vector<PolarRecord> out;
    for (auto& b : newton_puiseux_roots(fz, T)) {
      PolarRecord p;
      p.root = b;
      HValue hv = h_value(f, b.series, true);
      p.h = hv.h;
      p.a = hv.a;
      p.a_exact = hv.a_exact;
      if (p.h.infinite) p.d_gr = QExt::inf();
      out.push_back(std::move(p));
    }
    return out;
  };
  if (trunc) return build(*trunc);
  Rational T = 8;
  for (int attempt = 0; attempt < 10; ++attempt) {
    try {
      auto ps = build(T);
      Rational need = default_trunc(ps);
      if (T >= need) return ps;
      T = need;
    } catch (const InsufficientTruncation&) {
      T *= 2;
    } catch (const IndeterminateAtTruncation&) {
      T *= 2;
    }
  }
  throw InsufficientTruncation("polars: adaptive truncation exhausted at depth " + T.get_str());
}

std::vector<PolarMember> expand_members(const std::vector<PolarRecord>& ps) {
  std::vector<PolarMember> out;
  for (std::size_t r = 0; r < ps.size(); ++r)
    for (const auto& m : ps[r].root.members())
      for (int k = 0; k < ps[r].root.multiplicity; ++k) out.push_back({m, static_cast<int>(r)});
  return out;
}

}  // namespace canyon
