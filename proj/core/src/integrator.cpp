#include "canyon/integrator.hpp"

#include "canyon/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace canyon {

std::string chart_name(const GridParams& g) { return g.z_chart ? "z-chart" : "w-chart"; }

GQ exact_level(cplx c) {
  if (c == cplx(0)) return GQ();
  int ex = 0;
  std::frexp(std::abs(c), &ex);
  const int sh = 44 - ex;
  auto dyadic = [sh](double x) {
    Rational r(mpz_class(static_cast<long>(std::llround(std::ldexp(x, sh)))));
    if (sh >= 0)
      mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(sh));
    else
      mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(-sh));
    return r;
  };
  return GQ(dyadic(c.real()), dyadic(c.imag()));
}

std::vector<cplx> projection_branch_points(const BiPoly& f, const GQ& c, double wmax) {
  UPoly D = resultant_z(f - BiPoly::constant(c), f.dz());
  if (D.is_zero()) throw DegenerateLevel("level set has a multiple component");
  std::vector<cplx> out;
  if (D.degree() <= 0) return out;
  for (const auto& r : roots_with_multiplicity(D, 1e-12))
    if (std::abs(r.z) > 0 && std::abs(r.z) <= wmax) out.push_back(r.z);
  return out;
}

double isolation_radius(const BiPoly& f) {
  UPoly D = resultant_z(f, f.dz());
  if (D.is_zero()) throw NonIsolatedSingularity("isolation_radius: f has a multiple component");
  if (D.degree() <= 0) return INFINITY;
  BiPoly fz = f.dz(), fw = f.dw();
  const double fscale = f.coeff_magnitude();
  double best = INFINITY;
  for (const auto& r : roots_with_multiplicity(D, 1e-12)) {
    if (std::abs(r.z) == 0) continue;
    std::vector<cplx> coeffs;
    for (const auto& a : f.as_poly_in_z()) coeffs.push_back(a.eval(r.z));
    std::vector<cplx> zs;
    try {
      zs = poly_roots(coeffs);
    } catch (const SolverDivergence&) {
      continue;
    }
    for (cplx z : zs) {
      double sc = fscale * std::pow(1 + std::abs(z) + std::abs(r.z), f.degree());
      if (std::abs(fz.eval(z, r.z)) <= 1e-7 * sc && std::abs(fw.eval(z, r.z)) <= 1e-7 * sc)
        best = std::min(best, std::hypot(std::abs(z), std::abs(r.z)));
    }
  }
  return best;
}

namespace {

// Neumaier compensated sum.
struct Accum {
  double s = 0, comp = 0;
  void add(double x) {
    double t = s + x;
    comp += std::fabs(s) >= std::fabs(x) ? (s - t) + x : (x - t) + s;
    s = t;
  }
  double value() const { return s + comp; }
};

std::vector<cplx> trimmed(std::vector<cplx> v) {
  double big = 0;
  for (cplx c : v) big = std::max(big, std::abs(c));
  while (v.size() > 1 && std::abs(v.back()) <= 1e-14 * big) v.pop_back();
  return v;
}

std::vector<cplx> solve(const std::vector<cplx>& coeffs, std::vector<cplx>& warm) {
  auto c = trimmed(coeffs);
  if (c.size() < 2) return {};
  const std::vector<cplx>* init = warm.size() + 1 == c.size() ? &warm : nullptr;
  try {
    warm = poly_roots(c, init);
  } catch (const SolverDivergence&) {
    try {
      warm = poly_roots(c, nullptr, 2000);
    } catch (const SolverDivergence& e) {
      throw SheetTrackingLoss(std::string("level-set root solve failed: ") + e.what());
    }
  }
  return warm;
}

// C-infinity step: 1 on [0, 1/2], 0 on [1, inf).
double cutoff(double x) {
  if (x <= 0.5) return 1;
  if (x >= 1) return 0;
  double s = 2 * x - 1;
  double a = std::exp(-1 / (1 - s)), b = std::exp(-1 / s);
  return a / (a + b);
}

// Geometric tail of a decaying sequence of ring sums.
double ring_tail(double r0, double r1, double r2) {
  if (!(r2 > 0) || !(r1 > 0) || !(r0 > 0)) return 0;
  double q = std::sqrt(r2 / r0);
  if (q >= 0.999) return 0;
  return r2 * q / (1 - q);
}

struct Patch {
  cplx t;
  double r;
};

}  // namespace

double horn_distance(const HornSpec& h, cplx z, cplx w) {
  const long N = h.center.N();
  const double aw = std::abs(w);
  if (aw == 0) return z == cplx(0) ? 0 : INFINITY;
  const cplx base = std::polar(std::pow(aw, 1.0 / static_cast<double>(N)),
                               std::arg(w) / static_cast<double>(N));
  double best = INFINITY;
  for (long j = 0; j < N; ++j) {
    cplx t = base * std::polar(1.0, 2 * M_PI * static_cast<double>(j) / static_cast<double>(N));
    best = std::min(best, std::abs(z - h.center.eval_t(t, N)));
  }
  return best / std::pow(aw, h.e.get_d());
}

LevelIntegral integrate_levelset_multi(const BiPoly& f_in, cplx c_in, const PuiseuxSeries& center,
                                       const Rational& e, const std::vector<double>& radii,
                                       double eta, const GridParams& grid,
                                       const std::vector<HornSpec>& extra) {
  if (grid.z_chart && (!center.is_zero() || !radii.empty()))
    throw PreconditionViolation("integrate_levelset: the z-chart is only used for the whole ball");
  const BiPoly f = grid.z_chart ? f_in.swap_zw() : f_in;
  const GQ cq = exact_level(c_in);
  const cplx c = cq.to_complex();
  const double ac = std::abs(c);
  const bool curve = ac == 0;
  if (!curve && (!(ac > 1e-250) || !std::isfinite(ac)))
    throw DegenerateLevel("integrate_levelset: |c| too small for the grid");
  PuiseuxSeries gamma = center.truncated_below(e, false);
  std::vector<PTerm> rest;
  for (const auto& t : center.terms())
    if (t.q >= e) rest.push_back(t);
  PuiseuxSeries delta(rest);
  long extra_den = std::lcm(den_long(e), delta.N());
  ShiftedFrame frame(f, gamma, extra_den);
  const long M = frame.M();
  const double invM = 1.0 / static_cast<double>(M);
  const double Md = e.get_d() * static_cast<double>(M);
  // the lifted surface covers the level set M times; an interval is the
  // union of the horns around all conjugates of the center
  const double scale = invM;
  std::vector<cplx> roots_of_unity;
  for (long j = 0; j < M; ++j)
    roots_of_unity.push_back(std::polar(1.0, 2 * M_PI * static_cast<double>(j) * invM));
  const double eta2 = eta * eta;

  // branch points in t = w^{1/M}; the fibres over w do not see the shift
  std::vector<Patch> patches;
  for (cplx wk : projection_branch_points(f, cq, 1.2 * eta)) {
    double rt = std::pow(std::abs(wk), invM);
    for (long j = 0; j < M; ++j)
      patches.push_back({std::polar(rt, (std::arg(wk) + 2 * M_PI * static_cast<double>(j)) * invM), 0});
  }
  for (std::size_t k = 0; k < patches.size(); ++k) {
    double r = std::abs(patches[k].t);
    for (std::size_t j = 0; j < patches.size(); ++j)
      if (j != k) r = std::min(r, std::abs(patches[k].t - patches[j].t));
    patches[k].r = 0.5 * r;
  }

  LevelIntegral out;
  out.interval.assign(radii.size(), 0);
  out.branch_points = static_cast<int>(patches.size());
  Accum whole;
  std::vector<Accum> horn(radii.size());

  // K dS over the w-chart at one lifted point, times `area`
  struct Contribution {
    double whole = 0, extra = 0, band = 0;
    std::vector<double> horn;
  };
  Accum extra_sum, band_sum;
  // the horn indicator cuts grid cells; mass within a cell width of the
  // horn boundary bounds that error
  const double band_w = 2.0 / std::min(grid.per_efold, grid.patch_per_efold);
  auto point = [&](cplx Z, cplx t, double area, Contribution& acc) {
    auto s = frame.sample(Z, t);
    if (std::norm(s.z) + std::norm(s.w) > eta2) return;
    // G² |f_z|² underflows in double near a singular origin on the curve
    const long double a = std::norm(cplxl(s.fz)), fw2 = std::norm(cplxl(s.fw));
    const long double G = a + fw2;
    if (!(a > 0) || !(G > 0)) return;
    double v = static_cast<double>(2 * std::norm(cplxl(s.delta)) / (G * G * a));
    if (M > 1) v *= static_cast<double>(M * M) * std::pow(std::abs(t), static_cast<double>(2 * M - 2));
    v *= area;
    if (!std::isfinite(v)) return;
    v *= scale;
    acc.whole += v;
    bool inside = false, near = false;
    for (const auto& h : extra) {
      double q = horn_distance(h, s.z, s.w) / h.r;
      inside = inside || q <= 1;
      near = near || std::fabs(std::log(q)) <= band_w * std::max(1.0, h.e.get_d());
    }
    if (inside) acc.extra += v;
    if (near) acc.band += v;
    if (radii.empty()) return;
    double wd = std::exp(Md * std::log(std::abs(t)));
    double dist = INFINITY;
    for (cplx zeta : roots_of_unity) {
      cplx tj = zeta * t;
      cplx cj = gamma.eval_t(tj, M);
      if (!delta.is_zero()) cj += delta.eval_t(tj, M);
      dist = std::min(dist, std::abs(s.z - cj));
    }
    for (std::size_t k = 0; k < radii.size(); ++k)
      if (dist <= radii[k] * wd) acc.horn[k] += v;
  };
  auto commit = [&](const Contribution& acc) {
    whole.add(acc.whole);
    extra_sum.add(acc.extra);
    band_sum.add(acc.band);
    for (std::size_t k = 0; k < radii.size(); ++k) horn[k].add(acc.horn[k]);
  };

  // global log-polar grid in t, minus the patch weights
  {
    const double hs = 1.0 / grid.per_efold, hphi = 2 * M_PI / grid.angular;
    const double smax = invM * std::log(eta * 1.0001);
    const double smin = invM * std::log(curve ? grid.curve_inner : grid.inner_factor * ac);
    const int ns = static_cast<int>(std::ceil((smax - smin) / hs));
    std::vector<cplx> warm;
    double ring[3] = {0, 0, 0};
    for (int i = 0; i < ns; ++i) {
      double rho = std::exp(smax - (i + 0.5) * hs);
      Contribution acc;
      acc.horn.assign(radii.size(), 0);
      for (int j = 0; j < grid.angular; ++j) {
        cplx t = std::polar(rho, (j + 0.5) * hphi);
        double wgt = 1;
        for (const auto& p : patches) {
          double d = std::abs(t - p.t);
          if (d < p.r) wgt -= cutoff(d / p.r);
        }
        if (wgt <= 0) continue;
        for (cplx Z : solve(frame.level_in_Z(t, c), warm)) point(Z, t, rho * rho * hs * hphi * wgt, acc);
        ++out.points;
      }
      commit(acc);
      ring[0] = ring[1];
      ring[1] = ring[2];
      ring[2] = acc.whole;
    }
    out.inner_bound += ring_tail(ring[0], ring[1], ring[2]);
  }

  // local log-polar grids around each branch point
  for (const auto& p : patches) {
    if (!(p.r > 0)) continue;
    const double hs = 1.0 / grid.patch_per_efold, hphi = 2 * M_PI / grid.patch_angular;
    const int ns = static_cast<int>(std::ceil(-std::log(grid.patch_depth) / hs));
    std::vector<cplx> warm;
    double ring[3] = {0, 0, 0}, total = 0;
    Contribution last;
    bool settled = false;
    for (int i = 0; i < ns; ++i) {
      double rho = p.r * std::exp(-(i + 0.5) * hs);
      double wgt = cutoff(rho / p.r);
      Contribution acc;
      acc.horn.assign(radii.size(), 0);
      for (int j = 0; j < grid.patch_angular; ++j) {
        cplx t = p.t + std::polar(rho, (j + 0.5) * hphi);
        for (cplx Z : solve(frame.level_in_Z(t, c), warm)) point(Z, t, rho * rho * hs * hphi * wgt, acc);
        ++out.points;
      }
      commit(acc);
      total += acc.whole;
      ring[0] = ring[1];
      ring[1] = ring[2];
      ring[2] = acc.whole;
      last = std::move(acc);
      // past the last e-fold of the weight ramp, stop once rings are negligible
      if (i <= grid.patch_per_efold || ring[2] > ring[1] || ring[1] > ring[0]) continue;
      if (ring[2] <= 1e-9 * total) break;
      // a settled power law: the geometric remainder is accurate
      double q1 = ring[1] / ring[0], q2 = ring[2] / ring[1];
      if (ring[2] <= 1e-4 * total && std::fabs(q1 - q2) <= 1e-3 * q2) {
        settled = true;
        break;
      }
    }
    if (settled) {
      double q1 = ring[1] / ring[0], q2 = ring[2] / ring[1];
      double g1 = q1 / (1 - q1), g2 = q2 / (1 - q2);
      Contribution rest;
      rest.whole = last.whole * g2;
      rest.extra = last.extra * g2;
      rest.band = last.band * g2;
      for (double h : last.horn) rest.horn.push_back(h * g2);
      commit(rest);
      out.inner_bound += ring[2] * std::fabs(g2 - g1);
    } else {
      out.inner_bound += ring_tail(ring[0], ring[1], ring[2]);
    }
  }

  out.whole = whole.value();
  out.horn_union = extra_sum.value();
  out.horn_band = band_sum.value();
  for (std::size_t k = 0; k < radii.size(); ++k) out.interval[k] = horn[k].value();
  return out;
}

double integrate_levelset(const BiPoly& f, cplx c, const IntervalSpec& spec,
                          const GridParams& grid) {
  if (!(spec.eta > 0)) throw PreconditionViolation("integrate_levelset: need eta > 0");
  if (spec.whole)
    return integrate_levelset_multi(f, c, PuiseuxSeries::zero(), Rational(1), {}, spec.eta, grid)
        .whole;
  if (spec.e < 1 || !(spec.r > 0))
    throw PreconditionViolation("integrate_levelset: need e >= 1 and r > 0");
  return integrate_levelset_multi(f, c, spec.center, spec.e, {spec.r}, spec.eta, grid)
      .interval[0];
}

std::vector<double> Schedule::c_values(int m) const {
  std::vector<double> v;
  double c = c0_factor * std::pow(eta, m);
  for (int k = 0; k < steps; ++k, c *= ratio) v.push_back(c);
  return v;
}

Extrapolation aitken_tail(const std::vector<double>& x) {
  Extrapolation r;
  if (x.empty()) return r;
  r.value = x.back();
  if (x.size() < 3) {
    r.error = x.size() == 2 ? std::fabs(x[1] - x[0]) : 0;
    return r;
  }
  double x0 = x[x.size() - 3], x1 = x[x.size() - 2], x2 = x.back();
  double d1 = x1 - x0, d2 = x2 - x1;
  double scale = std::max({std::fabs(x0), std::fabs(x1), std::fabs(x2), 1e-300});
  if (std::fabs(d1) < 1e-13 * scale) {
    r.error = std::fabs(d2);
    return r;
  }
  double q = d2 / d1;
  if (std::fabs(q) >= 0.95) {
    r.error = std::fabs(d2);
    return r;
  }
  r.value = x2 + d2 * q / (1 - q);
  r.error = std::fabs(r.value - x2);
  return r;
}

namespace {

IntegrationResult run_schedule(const BiPoly& f, const PuiseuxSeries& center, const Rational& e,
                               const std::vector<double>& radii, const Schedule& sch,
                               const std::vector<HornSpec>& extra = {}) {
  IntegrationResult res;
  res.grid = sch.grid;
  // other singular points of f = 0 keep a share of the curvature as c -> 0
  res.eta = std::min(sch.eta, 0.5 * isolation_radius(f));
  res.radii = radii;
  Schedule local = sch;
  local.eta = res.eta;
  res.c_schedule = local.c_values(f.order());
  res.per_c.assign(radii.size(), {});
  // at fixed η the c -> 0 limit is the concentrated mass plus the curvature
  // of the limit curve f = 0 itself; the latter is removed here
  auto lim = integrate_levelset_multi(f, 0, center, e, radii, res.eta, sch.grid, extra);
  res.curve = lim.interval;
  res.whole_curve = lim.whole;
  double inner = lim.inner_bound;
  for (double cm : res.c_schedule) {
    cplx c = std::polar(cm, sch.phase);
    auto li = integrate_levelset_multi(f, c, center, e, radii, res.eta, sch.grid, extra);
    for (std::size_t k = 0; k < radii.size(); ++k)
      res.per_c[k].push_back(li.interval[k] - lim.interval[k]);
    const double w = li.whole - lim.whole;
    res.whole_per_c.push_back(w);
    // captured by the extra horns if given, else by the widest interval
    double captured = !extra.empty() ? li.horn_union - lim.horn_union
                      : !radii.empty() ? li.interval.back() - lim.interval.back()
                                       : w;
    res.captured_fraction.push_back(w > 0 ? captured / w : 0);
    if (!extra.empty())
      res.captured_error.push_back(
          w > 0 ? (li.horn_band + lim.horn_band + li.inner_bound + lim.inner_bound) / w : 0);
    inner = lim.inner_bound + li.inner_bound;
  }
  if (radii.empty()) {
    auto x = aitken_tail(res.whole_per_c);
    res.value = x.value;
    res.error_estimate = x.error + inner;
    return res;
  }
  std::vector<double> by_r;
  double err = 0;
  for (const auto& row : res.per_c) {
    auto x = aitken_tail(row);
    by_r.push_back(x.value);
    err = std::max(err, x.error);
  }
  auto xr = aitken_tail(by_r);
  res.value = xr.value;
  res.error_estimate = err + xr.error + inner;
  return res;
}

}  // namespace

double closed_form_total(const CanyonRecord& canyon) {
  if (canyon.mu_gr.infinite) return INFINITY;
  return 2 * M_PI * (canyon.mu_gr.value.get_d() + canyon.m_gr);
}

IntegrationResult canyon_total(const BiPoly& f, const CanyonRecord& canyon, const Schedule& sch) {
  if (canyon.d.infinite || canyon.d.value <= 1)
    throw PreconditionViolation("canyon_total: needs a canyon with 1 < d < inf");
  IntegrationResult r = run_schedule(f, canyon.representative, canyon.d.value, sch.radii, sch);
  if (sch.eta_halving) {
    Schedule half = sch;
    half.eta = 0.5 * r.eta;
    half.eta_halving = false;
    r.half_eta_value =
        run_schedule(f, canyon.representative, canyon.d.value, sch.radii, half).value;
  }
  r.closed_form = closed_form_total(canyon);
  r.relative_gap = std::fabs(r.value - r.closed_form) / r.closed_form;
  return r;
}

IntegrationResult interval_total(const BiPoly& f, const IntervalSpec& spec, const Schedule& sch) {
  Schedule s = sch;
  s.eta = spec.eta;
  if (spec.whole) return run_schedule(f, PuiseuxSeries::zero(), Rational(1), {}, s);
  return run_schedule(f, spec.center, spec.e, {spec.r}, s);
}

DiracReport dirac_profile(const BiPoly& f, cplx tangent, const std::vector<CanyonRecord>& canyons,
                          const LeadingFormAnalysis& lfa, const Schedule& sch,
                          const std::vector<double>& sector_radii, double sector_ratio) {
  bool degenerate = false;
  for (const auto& r : lfa.roots)
    if (r.mult > 1 && std::abs(r.z - tangent) < 1e-8 * (1 + std::abs(tangent))) degenerate = true;
  if (!degenerate)
    throw NotDegenerateDirection("dirac_profile: tangent is not a multiple root of H_m");
  DiracReport rep;
  rep.tangent = tangent;
  rep.sector_radii = sector_radii;
  std::vector<HornSpec> horns;
  for (const auto& c : canyons) {
    if (c.d.infinite || c.d.value <= 1 || !c.tangent) continue;
    if (std::abs(*c.tangent - tangent) > 1e-8 * (1 + std::abs(tangent))) continue;
    rep.canyon_ids.push_back(c.id);
    horns.push_back({c.representative, c.d.value, sch.radii.back()});
    IntegrationResult r = canyon_total(f, c, sch);
    rep.canyon_sum_numeric += r.value;
    rep.canyon_sum_closed += r.closed_form;
    Rational eps = std::min(Rational(1, 8), Rational((c.d.value - 1) / 2));
    IntegrationResult sharp = run_schedule(f, c.representative, c.d.value - eps, {1.0}, sch);
    rep.sharpened_totals.push_back(sharp.value);
    rep.canyon_results.push_back(std::move(r));
  }
  // a sector |z − τw| <= a|w| holds the canyons only once the level is far
  // below a^{...}; the sector pass runs on a steeper schedule
  Schedule deep = sch;
  deep.ratio = sector_ratio;
  PuiseuxSeries sector = tangent == cplx(0) ? PuiseuxSeries::zero()
                                            : PuiseuxSeries::monomial(tangent, Rational(1));
  IntegrationResult sec = run_schedule(f, sector, Rational(1), sector_radii, deep, horns);
  for (const auto& row : sec.per_c) rep.sector_totals.push_back(aitken_tail(row).value);
  rep.sector_total = rep.sector_totals.back();
  rep.sector_c_schedule = sec.c_schedule;
  rep.captured_fraction = sec.captured_fraction;
  rep.fraction_monotone = true;
  rep.captured_error = sec.captured_error;
  // non-decreasing up to the quadrature error of the two neighbours
  for (std::size_t k = 1; k < rep.captured_fraction.size(); ++k)
    if (rep.captured_fraction[k] <
        rep.captured_fraction[k - 1] - rep.captured_error[k] - rep.captured_error[k - 1])
      rep.fraction_monotone = false;
  if (rep.canyon_sum_numeric > 0)
    rep.relative_gap_sector_canyon =
        std::fabs(rep.sector_total - rep.canyon_sum_numeric) / rep.canyon_sum_numeric;
  if (rep.canyon_sum_closed > 0)
    rep.relative_gap_sector_closed =
        std::fabs(rep.sector_total - rep.canyon_sum_closed) / rep.canyon_sum_closed;
  return rep;
}

LangevinReport langevin_check(const BiPoly& f, const std::vector<PolarRecord>& polars,
                              const std::vector<CanyonRecord>& canyons,
                              const LeadingFormAnalysis& lfa,
                              const std::optional<Schedule>& numeric) {
  LangevinReport rep;
  MilnorResult mu = milnor_number(f, polars);
  rep.mu = mu.mu;
  rep.m = lfa.m;
  rep.r = lfa.r;
  rep.lhs = Rational(rep.mu + rep.m - 1);
  rep.rhs = Rational(rep.m * (rep.r - 1));
  for (const auto& c : canyons) {
    if (c.d.infinite) throw NonIsolatedSingularity("langevin_check: canyon of infinite degree");
    if (c.d.value > 1) rep.rhs += c.mu_gr.value + c.m_gr;
  }
  rep.identity = rep.lhs == rep.rhs;
  rep.closed_form = 2 * M_PI * rep.lhs.get_d();
  if (numeric) {
    IntervalSpec spec;
    spec.whole = true;
    spec.eta = numeric->eta;
    IntegrationResult r = interval_total(f, spec, *numeric);
    r.closed_form = rep.closed_form;
    r.relative_gap = std::fabs(r.value - r.closed_form) / r.closed_form;
    rep.numeric = std::move(r);
  }
  return rep;
}

int sheet_count(const BiPoly& f, const CanyonRecord& canyon, cplx u) {
  if (canyon.d.infinite) throw PreconditionViolation("sheet_count: infinite degree");
  const Rational& d = canyon.d.value;
  PuiseuxSeries gamma = canyon.representative.truncated_below(d, false);
  ShiftedFrame frame(f, gamma, den_long(d));
  const long M = frame.M();
  const auto k = static_cast<std::size_t>(Rational(d * M).get_num().get_si());
  // P(u t^k, t) as a polynomial in t
  std::vector<cplx> q;
  const auto& P = frame.P().coeffs();
  for (std::size_t i = 0; i < P.size(); ++i) {
    cplx ui = std::pow(u, static_cast<int>(i));
    for (std::size_t j = 0; j < P[i].size(); ++j) {
      std::size_t deg = j + i * k;
      if (q.size() <= deg) q.resize(deg + 1, 0);
      q[deg] += P[i][j] * ui;
    }
  }
  // sheets through the canyon: roots that collapse to t = 0 as c -> 0
  q[0] -= 1e-40;
  std::vector<cplx> warm;
  long n = 0;
  for (cplx t : solve(q, warm))
    if (std::abs(t) < 0.05) ++n;
  if (n % M != 0) throw SheetTrackingLoss("sheet_count: root count not divisible by the frame");
  return static_cast<int>(n / M);
}

}  // namespace canyon
