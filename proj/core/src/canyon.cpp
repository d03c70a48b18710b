#include "canyon/canyon.hpp"

#include "canyon/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

namespace canyon {

QExt gradient_degree(const BiPoly& f, const PolarRecord& polar) {
  if (polar.h.infinite) return QExt::inf();
  const Rational& h = polar.h.value;
  BiSeries F = substitute_shift_full(f, polar.root.series);
  if (!F.trunc_order().infinite && F.trunc_order().value < h - 1)
    throw InsufficientTruncation("gradient_degree: polar certified only to " +
                                 F.trunc_order().str());
  BiSeries FZ = F.dZ().truncated(F.trunc_order());
  return QExt(sigma_star_support_line(build_polygon(FZ), h).sigma_star);
}

namespace {

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double n = static_cast<double>(x.size());
  double sx = std::accumulate(x.begin(), x.end(), 0.0);
  double sy = std::accumulate(y.begin(), y.end(), 0.0);
  double sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxx += x[k] * x[k];
    sxy += x[k] * y[k];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

Rational lgr(const BiSeries& FZ, const BiSeries& FW, const Rational& e) {
  Rational a = weighted_order(FZ, e), b = weighted_order(FW, e);
  return a < b ? a : b;
}

}  // namespace

GradientSpotCheck gradient_degree_spot_check(const BiPoly& f, const PolarRecord& polar,
                                             const Rational& d, unsigned long seed) {
  GradientSpotCheck r;
  if (polar.h.infinite) return r;
  BiSeries F = substitute_shift_full(f, polar.root.series);
  BiSeries FZ = F.dZ(), FW = F.dW();
  ShiftedFrame frame(f, polar.root.series);
  Rational below = d - Rational(1, 64);
  r.expected_at_d = lgr(FZ, FW, d).get_d();
  r.expected_below = lgr(FZ, FW, below).get_d();
  double y_hi = 5e-2, y_lo = 1e-5;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> rad(0.5, 2.0), ang(0, 2 * M_PI);
  auto slope = [&](cplx u, const Rational& e) {
    std::vector<double> lx, ly;
    double ed = e.get_d();
    for (int k = 0; k < 16; ++k) {
      double y = y_hi * std::pow(y_lo / y_hi, k / 15.0);
      ly.push_back(frame.log_sample(u, ed, y).log_grad);
      lx.push_back(std::log(y));
    }
    return fit_slope(lx, ly);
  };
  for (r.attempts = 1; r.attempts <= 8; ++r.attempts) {
    r.u = std::polar(rad(rng), ang(rng));
    r.slope_at_d = slope(r.u, d);
    r.slope_below = slope(r.u, below);
    if (std::fabs(r.slope_at_d - r.expected_at_d) < 0.05 &&
        r.slope_below < r.slope_at_d + 0.01 && r.slope_below > r.expected_below - 0.05) {
      r.passed = true;
      return r;
    }
  }
  r.attempts = 8;
  return r;
}

PolarRecord deepen_polar(const BiPoly& f, const PolarRecord& polar, const Rational& depth) {
  if (polar.root.series.trunc_order().infinite) return polar;
  for (auto& b : newton_puiseux_roots(f.dz(), depth)) {
    for (const auto& c : b.members()) {
      if (!contact_order(c, polar.root.series, false, 1e-6).infinite) continue;
      PolarRecord p = polar;
      p.root = b;
      p.root.series = c;
      HValue hv = h_value(f, c, true);
      p.h = hv.h;
      p.a = hv.a;
      p.a_exact = hv.a_exact;
      return p;
    }
  }
  throw SolverDivergence("deepen_polar: polar not found at larger depth");
}

std::vector<CanyonRecord> build_canyons(const BiPoly& f, std::vector<PolarRecord>& ps,
                                        const LeadingFormAnalysis& lfa) {
  const std::size_t n = ps.size();
  for (auto& p : ps)
    if (!p.h.infinite && p.d_gr == QExt()) p.d_gr = gradient_degree(f, p);
  // union-find over polars of finite degree > 1
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  const QExt one(Rational(1));
  for (std::size_t i = 0; i < n; ++i) {
    if (ps[i].d_gr.infinite) continue;
    for (std::size_t j = 0; j < i; ++j) {
      if (ps[j].d_gr != ps[i].d_gr) continue;
      if (ps[i].d_gr == one ||
          contact_order(ps[i].root.series, ps[j].root.series) >= ps[i].d_gr)
        parent[find(i)] = find(j);
    }
  }
  std::vector<CanyonRecord> out;
  std::vector<int> canyon_of_root(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t root = find(i);
    if (canyon_of_root[root] < 0) {
      CanyonRecord c;
      c.id = static_cast<int>(out.size());
      c.d = ps[i].d_gr;
      c.mu_gr = QExt(Rational(0));
      canyon_of_root[root] = c.id;
      out.push_back(c);
    }
    CanyonRecord& c = out[static_cast<std::size_t>(canyon_of_root[root])];
    c.members.push_back(static_cast<int>(i));
    int count = ps[i].root.multiplicity * ps[i].root.class_size;
    c.m_gr += count;
    if (ps[i].h.infinite) c.mu_gr = QExt::inf();
    else if (!c.mu_gr.infinite) c.mu_gr = QExt(c.mu_gr.value + (ps[i].h.value - 1) * count);
    ps[i].canyon_id = c.id;
  }
  for (auto& c : out) {
    const PolarRecord& rep = ps[static_cast<std::size_t>(c.members.front())];
    if (c.d.infinite) {
      c.representative = rep.root.series;
      c.minimal = false;
    } else {
      c.representative = rep.root.series.truncated_below(c.d.value, true);
      c.minimal = c.d == one ? !lfa.degenerate : true;
    }
    c.tableland = c.minimal && !c.d.infinite;
    if (c.d.infinite || c.d == one) {
      c.m_branch = c.m_gr;
    } else {
      for (int j : c.members) {
        const PolarRecord& p = ps[static_cast<std::size_t>(j)];
        for (const auto& g : p.root.members())
          if (direct_contact(rep.root.series, g) >= c.d) c.m_branch += p.root.multiplicity;
      }
    }
    if (c.d != one) {
      cplx slope = 0;
      for (const auto& t : rep.root.series.terms())
        if (t.q == 1) slope = t.c;
      c.tangent = slope;
    }
  }
  return out;
}

ProfileParts lojasiewicz_parts(const BiSeries& D, const BiSeries& FZ, const BiSeries& FW,
                               const Rational& e) {
  return {weighted_order(D, e), lgr(FZ, FW, e)};
}

Rational LojasiewiczProfile::eval(const Rational& e) const {
  if (e <= breakpoints.front().first) return breakpoints.front().second;
  for (std::size_t k = 1; k < breakpoints.size(); ++k) {
    const auto& [e0, l0] = breakpoints[k - 1];
    const auto& [e1, l1] = breakpoints[k];
    if (e <= e1) {
      Rational r = l0 + (l1 - l0) * (e - e0) / (e1 - e0);
      return r;
    }
  }
  return breakpoints.back().second;
}

namespace {

LojasiewiczProfile profile_once(const BiPoly& f, const PolarRecord& polar, const Rational& d,
                                const Rational& e_max) {
  BiSeries F = substitute_shift_full(f, polar.root.series);
  BiSeries FZ = F.dZ(), FW = F.dW();
  BiSeries D = substitute_shift_full(delta_poly(f), polar.root.series);
  std::set<Rational> cand{Rational(1), e_max};
  if (d >= 1 && d <= e_max) cand.insert(d);
  for (const BiSeries* s : {&FZ, &FW, &D})
    for (const Edge& e : build_polygon(*s).edges)
      if (e.coslope > 1 && e.coslope < e_max) cand.insert(e.coslope);
  // crossings of O(F_Z) and O(F_W) between consecutive candidates
  std::vector<Rational> pts(cand.begin(), cand.end());
  for (std::size_t k = 1; k < pts.size(); ++k) {
    Rational a = pts[k - 1], b = pts[k];
    Rational da = weighted_order(FZ, a) - weighted_order(FW, a);
    Rational db = weighted_order(FZ, b) - weighted_order(FW, b);
    if (sgn(da) * sgn(db) < 0) {
      Rational x = a + (b - a) * da / (da - db);
      cand.insert(x);
    }
  }
  std::vector<std::pair<Rational, Rational>> raw;
  for (const Rational& e : cand) {
    ProfileParts p = lojasiewicz_parts(D, FZ, FW, e);
    raw.emplace_back(e, p.L_delta - 3 * p.L_gr);
  }
  LojasiewiczProfile prof;
  for (const auto& pt : raw) {
    auto& bp = prof.breakpoints;
    if (bp.size() >= 2) {
      const auto& a = bp[bp.size() - 2];
      const auto& b = bp.back();
      Rational s1 = (b.second - a.second) / (b.first - a.first);
      Rational s2 = (pt.second - b.second) / (pt.first - b.first);
      if (s1 == s2 && b.first != d) bp.pop_back();
    }
    bp.push_back(pt);
  }
  return prof;
}

}  // namespace

LojasiewiczProfile lojasiewicz_profile(const BiPoly& f, const PolarRecord& polar_in,
                                       std::optional<Rational> e_max) {
  PolarRecord polar = polar_in;
  QExt dq = polar.d_gr == QExt() ? gradient_degree(f, polar) : polar.d_gr;
  if (dq.infinite) throw PreconditionViolation("lojasiewicz_profile: d_gr is infinite");
  Rational d = dq.value;
  Rational emax = e_max ? *e_max : d + 1;
  for (int attempt = 0;; ++attempt) {
    try {
      return profile_once(f, polar, d, emax);
    } catch (const InsufficientTruncation&) {
      if (attempt >= 4) throw;
      Rational depth = polar.root.series.trunc_order().value * 2;
      polar = deepen_polar(f, polar, depth);
    }
  }
}

MonotonicityReport check_monotonicity(const BiPoly& f, const PolarRecord& polar,
                                      const LojasiewiczProfile& L) {
  MonotonicityReport r;
  BiSeries F = substitute_shift_full(f, polar.root.series);
  NewtonPolygon P = build_polygon(F);
  r.tan_bottom = P.coslope_bottom();
  r.tan_top = P.coslope_top();
  r.d = polar.d_gr.value;
  // evaluation grid: breakpoints, interval ends and midpoints
  std::set<Rational> grid{Rational(1), r.tan_bottom, r.tan_top, r.d};
  for (const auto& bp : L.breakpoints) grid.insert(bp.first);
  std::vector<Rational> g(grid.begin(), grid.end());
  for (std::size_t k = 1; k < g.size(); ++k) grid.insert((g[k - 1] + g[k]) / 2);
  g.assign(grid.begin(), grid.end());
  auto in = [](const Rational& x, const Rational& a, const Rational& b) { return x >= a && x <= b; };
  Rational prev_e, prev_l;
  bool have = false;
  for (const Rational& e : g) {
    if (e > r.d) break;
    Rational l = L.eval(e);
    if (e > 1 && e < r.tan_bottom && !(l > -1)) r.above_minus_one = false;
    if (l < -r.d) r.minimum_at_d = false;
    if (have) {
      if (in(prev_e, r.tan_bottom, r.tan_top) && in(e, r.tan_bottom, r.tan_top) && l < prev_l)
        r.increasing = false;
      if (in(prev_e, r.tan_top, r.d) && in(e, r.tan_top, r.d) && l > prev_l) r.decreasing = false;
    }
    prev_e = e;
    prev_l = l;
    have = true;
  }
  Rational ld = L.eval(r.d);
  r.value_at_d = ld == -r.d;
  // largest grid point strictly below d
  Rational left = 1;
  for (const Rational& e : g)
    if (e < r.d) left = e;
  r.strictly_near_d = left < r.d && L.eval((left + r.d) / 2) > ld;
  return r;
}

bool constant_curvature_check(const BiPoly& f) {
  if (f.is_zero()) throw PreconditionViolation("constant_curvature_check: f = 0");
  int m = f.order();
  if (m < 1 || !is_mini_regular(f)) return false;
  std::vector<RootBundle> roots;
  try {
    roots = newton_puiseux_roots(f, Rational(4));
  } catch (const InsufficientTruncation&) {
    return false;  // two distinct roots agreeing to high order
  }
  return roots.size() == 1 && roots[0].multiplicity == m && roots[0].class_size == 1;
}

}  // namespace canyon
