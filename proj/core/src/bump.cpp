#include "canyon/bump.hpp"

#include "canyon/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

namespace canyon {

std::string CurvatureWord::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  os << std::setprecision(12) << a << "*delta^(" << L.str() << ")";
  return os.str();
}

bool operator<(const CurvatureWord& x, const CurvatureWord& y) {
  if (x.is_zero() || y.is_zero()) return x.is_zero() && !y.is_zero();
  if (x.L != y.L) return y.L < x.L;
  return x.a < y.a;
}

bool substantially_larger(const CurvatureWord& x, const CurvatureWord& y) {
  if (x.is_zero()) return false;
  if (y.is_zero()) return true;
  return x.L < y.L;
}

namespace {

cplx polyval(const std::vector<cplx>& c, cplx u) { return horner(c, u); }

std::vector<cplx> polyder(const std::vector<cplx>& c) {
  std::vector<cplx> d;
  for (std::size_t k = 1; k < c.size(); ++k) d.push_back(c[k] * static_cast<double>(k));
  return d;
}

std::vector<cplx> to_cvec(const UPoly& p) { return p.to_complex(); }

double max_root_modulus(const std::vector<cplx>& c) {
  std::vector<cplx> t = c;
  while (!t.empty() && std::abs(t.back()) == 0) t.pop_back();
  if (t.size() < 2) return 0;
  double r = 0;
  for (cplx z : poly_roots(t)) r = std::max(r, std::abs(z));
  return r;
}

}  // namespace

double RFunction::eval(cplx u) const {
  double num = std::norm(polyval(D, u));
  if (alpha) num *= std::pow(1 + std::norm(u), alpha);
  double den = beta;
  for (const auto& q : P) den += std::norm(polyval(q, u));
  if (den == 0) return 0;  // multiple root of H_m(·,1)
  return num / (den * den * den);
}

cplx RFunction::gradient(cplx u) const {
  // 2 ∂_ū of a real function gives ∂x + i∂y.
  cplx Dv = polyval(D, u), Dd = polyval(polyder(D), u);
  double s = 1 + std::norm(u);
  double wgt = alpha ? std::pow(s, alpha) : 1.0;
  double N = std::norm(Dv) * wgt;
  cplx dN = Dv * std::conj(Dd) * wgt;
  if (alpha) dN += std::norm(Dv) * alpha * std::pow(s, alpha - 1) * u;
  double Q = beta;
  cplx dQ = 0;
  for (const auto& q : P) {
    cplx v = polyval(q, u), dv = polyval(polyder(q), u);
    Q += std::norm(v);
    dQ += v * std::conj(dv);
  }
  cplx dR = (dN * Q - 3.0 * N * dQ) / (Q * Q * Q * Q);
  return 2.0 * dR;
}

RFunction r_function(const BiPoly& f, const CanyonRecord& canyon,
                     const std::vector<PolarRecord>& polars) {
  if (canyon.d.infinite) throw PreconditionViolation("r_function: canyon degree is infinite");
  RFunction R;
  R.canyon_id = canyon.id;
  R.d = canyon.d.value;
  if (R.d == 1) {
    R.kind = RFunction::Kind::UnitDegree;
    BiPoly H = f.homogeneous(f.order());
    R.D = to_cvec(delta_poly(H).at_w_one());
    R.P = {to_cvec(H.dz().at_w_one()), to_cvec(H.dw().at_w_one())};
    R.alpha = 1;
    R.beta = 0;
    R.search_radius = std::max(4.0, 4 * max_root_modulus(to_cvec(H.at_w_one())));
    return R;
  }
  const PolarRecord& polar = polars.at(static_cast<std::size_t>(canyon.members.front()));
  BiSeries F = substitute_shift_full(f, polar.root.series);
  WeightedForm I = weighted_initial_form(F.dZ(), R.d);
  int deg = 0;
  for (const auto& [k, c] : I.form.terms()) deg = std::max(deg, k.first);
  R.p.assign(static_cast<std::size_t>(deg) + 1, 0);
  for (const auto& [k, c] : I.form.terms()) R.p[static_cast<std::size_t>(k.first)] += c.c;
  if (deg != canyon.m_branch)
    throw PreconditionViolation("r_function: deg p = " + std::to_string(deg) +
                                " differs from the branch multiplicity " +
                                std::to_string(canyon.m_branch));
  R.b = std::abs(polar.h.value.get_d() * polar.a);
  R.D = polyder(R.p);
  for (auto& c : R.D) c *= R.b * R.b;
  // f_w = F_W - γ' f_z picks up the tangent slope of the canyon.
  cplx ha = polar.h.value.get_d() * polar.a;
  cplx slope = canyon.tangent.value_or(cplx(0));
  if (slope == cplx(0)) {
    R.P = {R.p};
    R.beta = R.b * R.b;
  } else {
    std::vector<cplx> q(R.p.size());
    for (std::size_t k = 0; k < q.size(); ++k) q[k] = -slope * R.p[k];
    q[0] += ha;
    R.P = {R.p, q};
    R.beta = 0;
  }
  R.alpha = 0;
  R.search_radius = std::max(4.0, 4 * max_root_modulus(R.p));
  return R;
}

namespace {

cplx ascend(const RFunction& R, cplx u, double tol, bool& ok) {
  ok = false;
  double val = R.eval(u);
  for (int it = 0; it < 2000; ++it) {
    cplx g = R.gradient(u);
    if (std::abs(g) < tol * std::max(1.0, val)) {
      ok = true;
      return u;
    }
    // Newton step when the finite-difference Hessian is negative definite.
    double h = 1e-6 * std::max(1.0, std::abs(u));
    cplx gx = (R.gradient(u + h) - R.gradient(u - h)) / (2 * h);
    cplx gy = (R.gradient(u + cplx(0, h)) - R.gradient(u - cplx(0, h))) / (2 * h);
    double a = gx.real(), b = 0.5 * (gx.imag() + gy.real()), c = gy.imag();
    double det = a * c - b * b;
    cplx step;
    bool newton = det > 0 && a < 0;
    if (newton) {
      step = cplx(-(c * g.real() - b * g.imag()) / det, -(-b * g.real() + a * g.imag()) / det);
      cplx cand = u + step;
      double cv = R.eval(cand);
      if (cv >= val - 1e-15 * std::max(1.0, val)) {
        u = cand;
        val = cv;
        continue;
      }
    }
    double t = std::min(1.0, 0.1 * R.search_radius);
    bool moved = false;
    for (int k = 0; k < 60; ++k, t *= 0.5) {
      cplx cand = u + t * g / std::abs(g);
      double cv = R.eval(cand);
      if (cv > val) {
        u = cand;
        val = cv;
        moved = true;
        break;
      }
    }
    if (!moved) {
      ok = std::abs(g) < 1e3 * tol * std::max(1.0, val);
      return u;
    }
  }
  return u;
}

bool verify_local_max(const RFunction& R, cplx u) {
  double v = R.eval(u), h = 1e-4 * std::max(1.0, std::abs(u));
  for (int k = 0; k < 8; ++k)
    if (R.eval(u + std::polar(h, k * M_PI / 4)) > v + 1e-12 * std::max(1.0, v)) return false;
  return true;
}

std::optional<Ring> fit_ring(const std::vector<cplx>& pts, double tol) {
  if (pts.size() < 3) return std::nullopt;
  Eigen::MatrixXd A(static_cast<Eigen::Index>(pts.size()), 3);
  Eigen::VectorXd b(static_cast<Eigen::Index>(pts.size()));
  for (std::size_t k = 0; k < pts.size(); ++k) {
    auto i = static_cast<Eigen::Index>(k);
    A(i, 0) = pts[k].real();
    A(i, 1) = pts[k].imag();
    A(i, 2) = 1;
    b(i) = -std::norm(pts[k]);
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  if (qr.rank() < 3) return std::nullopt;
  Eigen::Vector3d s = qr.solve(b);
  cplx center(-s(0) / 2, -s(1) / 2);
  double r2 = std::norm(center) - s(2);
  if (!(r2 > 0)) return std::nullopt;
  double r = std::sqrt(r2);
  for (cplx p : pts)
    if (std::fabs(std::abs(p - center) - r) > tol) return std::nullopt;
  return Ring{center, r};
}

}  // namespace

std::vector<BumpRecord> find_bumps(const RFunction& R, const BumpOptions& opt) {
  const int n = opt.grid;
  const double rad = R.search_radius;
  auto coord = [&](int k) { return -rad + 2 * rad * k / (n - 1); };
  std::vector<double> val(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  auto at = [&](int i, int j) -> double& {
    return val[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)];
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) at(i, j) = R.eval(cplx(coord(i), coord(j)));
  std::vector<cplx> seeds{0};
  for (int i = 1; i + 1 < n; ++i)
    for (int j = 1; j + 1 < n; ++j) {
      double v = at(i, j);
      if (!(v > 0) || std::hypot(coord(i), coord(j)) > rad) continue;
      bool is_max = true;
      for (int di = -1; di <= 1 && is_max; ++di)
        for (int dj = -1; dj <= 1; ++dj)
          if ((di || dj) && at(i + di, j + dj) > v) {
            is_max = false;
            break;
          }
      if (is_max) seeds.emplace_back(coord(i), coord(j));
    }
  struct Max {
    cplx u;
    double R;
  };
  std::vector<Max> maxima;
  for (cplx s : seeds) {
    bool ok = false;
    cplx u = ascend(R, s, opt.grad_tol, ok);
    if (!ok || !verify_local_max(R, u)) continue;
    double v = R.eval(u);
    if (!(v > 0)) continue;
    bool dup = false;
    for (const auto& m : maxima)
      if (std::abs(m.u - u) < opt.cluster_dist) {
        dup = true;
        break;
      }
    if (!dup) maxima.push_back({u, v});
  }
  if (maxima.empty())
    throw NoMaximumFound("find_bumps: no local maximum of R in the search disk");
  std::sort(maxima.begin(), maxima.end(), [](const Max& a, const Max& b) {
    if (a.R != b.R) return a.R > b.R;
    if (a.u.real() != b.u.real()) return a.u.real() < b.u.real();
    return a.u.imag() < b.u.imag();
  });
  // group maxima sharing a value
  std::vector<BumpRecord> out;
  for (const auto& m : maxima) {
    if (!out.empty() && std::fabs(out.back().R_value - m.R) <=
                            opt.ring_value_tol * std::max(1.0, out.back().R_value)) {
      out.back().locations.push_back(m.u);
      continue;
    }
    BumpRecord b;
    b.canyon_id = R.canyon_id;
    b.R_value = m.R;
    b.L_value = -R.d;
    b.locations.push_back(m.u);
    out.push_back(b);
  }
  for (auto& b : out) {
    std::sort(b.locations.begin(), b.locations.end(), [](cplx x, cplx y) {
      if (std::arg(x) != std::arg(y)) return std::arg(x) < std::arg(y);
      return std::abs(x) < std::abs(y);
    });
    b.ring = fit_ring(b.locations, opt.ring_radius_tol);
  }
  return out;
}

std::vector<LandscapeRow> landscape(const RFunction& R, int grid) {
  std::vector<LandscapeRow> rows;
  rows.reserve(static_cast<std::size_t>(grid) * static_cast<std::size_t>(grid));
  const double rad = R.search_radius;
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j) {
      double x = -rad + 2 * rad * i / (grid - 1), y = -rad + 2 * rad * j / (grid - 1);
      rows.push_back({x, y, R.eval(cplx(x, y))});
    }
  return rows;
}

void write_landscape_csv(std::ostream& os, const std::vector<LandscapeRow>& rows) {
  os << "re_u,im_u,R\n" << std::setprecision(12);
  for (const auto& r : rows) os << r.re << ',' << r.im << ',' << r.R << '\n';
}

WordFit fit_curvature_word_detail(const BiPoly& f, const PuiseuxSeries& gamma, cplx u,
                                  const Rational& e) {
  long N = std::lcm(gamma.N(), den_long(e));
  ShiftedFrame frame(f, gamma);
  const double ed = e.get_d();
  const double step = 1.0 / static_cast<double>(N);

  constexpr int kCorr = 3;
  std::vector<double> ly, lk;
  int zeros = 0;
  for (int k = 0; k <= 24; ++k) {
    double y = 1e-2 * std::pow(0.8, k);
    auto s = frame.log_sample(u, ed, y);
    if (std::isinf(s.log_delta) && s.log_delta < 0) {
      ++zeros;
      continue;
    }
    double v = std::log(2.0) + 2 * s.log_delta - 6 * s.log_grad;
    if (!std::isfinite(v)) continue;
    ly.push_back(std::log(y));
    lk.push_back(v);
  }
  WordFit r;
  r.points = static_cast<int>(ly.size());
  if (zeros == 25) return r;
  if (ly.size() < 8) throw FitUnstable("fit_curvature_word: too few usable samples");
  const auto n = static_cast<Eigen::Index>(ly.size());

  // log K = log(2a) + L log y + log(1 + b1 t + ... ), t = y^(1/N). For fixed L the
  // coefficients of the polynomial in t are linear; fit them on relative residuals.
  auto profile = [&](double L, Eigen::VectorXd& c) {
    std::vector<double> lm(ly.size());
    for (std::size_t i = 0; i < ly.size(); ++i) lm[i] = lk[i] - L * ly[i];
    double shift = *std::max_element(lm.begin(), lm.end());
    Eigen::MatrixXd A(n, kCorr + 1);
    Eigen::VectorXd b = Eigen::VectorXd::Ones(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      auto si = static_cast<std::size_t>(i);
      double inv = std::exp(shift - lm[si]);
      double t = std::exp(ly[si] * step);
      double tj = 1;
      for (int j = 0; j <= kCorr; ++j, tj *= t) A(i, j) = tj * inv;
    }
    c = A.colPivHouseholderQr().solve(b);
    double res = (b - A * c).squaredNorm();
    c *= std::exp(shift);
    return res;
  };

  double L0 = 0;
  {
    double mx = std::accumulate(ly.begin(), ly.end(), 0.0) / static_cast<double>(n);
    double my = std::accumulate(lk.begin(), lk.end(), 0.0) / static_cast<double>(n);
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < ly.size(); ++i) {
      sxy += (ly[i] - mx) * (lk[i] - my);
      sxx += (ly[i] - mx) * (ly[i] - mx);
    }
    L0 = sxy / sxx;
  }
  constexpr double kSpan = 6, kStep = 0.01;
  const int steps = static_cast<int>(2 * kSpan / kStep);
  std::vector<double> grid(static_cast<std::size_t>(steps + 1));
  Eigen::VectorXd c;
  for (int i = 0; i <= steps; ++i)
    grid[static_cast<std::size_t>(i)] = profile(L0 - kSpan + i * kStep, c);

  struct Min {
    double L, obj;
  };
  std::vector<Min> mins;
  for (int i = 0; i <= steps; ++i) {
    auto si = static_cast<std::size_t>(i);
    if (i > 0 && grid[si - 1] < grid[si]) continue;
    if (i < steps && grid[si + 1] < grid[si]) continue;
    double lo = L0 - kSpan + (i - 1) * kStep, hi = lo + 2 * kStep;
    const double g = (std::sqrt(5.0) - 1) / 2;
    for (int it = 0; it < 60; ++it) {
      double a = hi - g * (hi - lo), b = lo + g * (hi - lo);
      if (profile(a, c) < profile(b, c)) hi = b;
      else lo = a;
    }
    double L = (lo + hi) / 2;
    mins.push_back({L, profile(L, c)});
  }
  double best = mins.front().obj;
  for (auto& m : mins) best = std::min(best, m.obj);
  // L - 1/N also fits exactly (the polynomial absorbs a factor t): take the highest
  double Lhat = -std::numeric_limits<double>::infinity();
  for (auto& m : mins)
    if (m.obj <= 10 * best + 1e-20 * static_cast<double>(n)) Lhat = std::max(Lhat, m.L);

  auto log_r2 = [&](double L, const Eigen::VectorXd& coef) {
    double mean = std::accumulate(lk.begin(), lk.end(), 0.0) / static_cast<double>(n);
    double tot = 0, res = 0;
    for (std::size_t i = 0; i < ly.size(); ++i) {
      double t = std::exp(ly[i] * step), p = 0, tj = 1;
      for (int j = 0; j <= kCorr; ++j, tj *= t) p += coef(j) * tj;
      if (!(p > 0)) return -std::numeric_limits<double>::infinity();
      double d = lk[i] - L * ly[i] - std::log(p);
      res += d * d;
      tot += (lk[i] - mean) * (lk[i] - mean);
    }
    return tot > 0 ? 1 - res / tot : 1.0;
  };
  profile(Lhat, c);
  r.exponent_raw = Lhat;
  r.r_squared = log_r2(Lhat, c);
  if (r.r_squared < 0.999)
    throw FitUnstable("fit_curvature_word: R^2 = " + std::to_string(r.r_squared));
  Rational L = rationalize_real(r.exponent_raw, 2 * N);
  profile(L.get_d(), c);
  r.word.a = c(0) / 2;
  r.word.L = QExt(L);
  return r;
}

}  // namespace canyon
