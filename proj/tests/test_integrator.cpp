#include "canyon/errors.hpp"
#include "canyon/integrator.hpp"
#include "canyon/parse.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace canyon;

namespace {

Rational q(long a, long b = 1) { return make_rational(a, b); }
constexpr double pi = std::numbers::pi;

struct Setup {
  BiPoly f;
  LeadingFormAnalysis lfa;
  std::vector<PolarRecord> polars;
  std::vector<CanyonRecord> canyons;
};

Setup setup(const char* text) {
  Setup s;
  s.f = parse_polynomial(text);
  s.lfa = leading_form_analysis(s.f);
  s.polars = polars(s.f);
  s.canyons = build_canyons(s.f, s.polars, s.lfa);
  return s;
}

}  // namespace

TEST_SUITE("curvature-integrator") {

TEST_CASE("exact level snapping") {
  cplx c = std::polar(1e-7, 0.3);
  GQ g = exact_level(c);
  CHECK(std::abs(g.to_complex() - c) < 1e-12 * std::abs(c));
  CHECK(exact_level(0.5) == GQ(q(1, 2)));
}

TEST_CASE("branch points of the projection") {
  BiPoly f = parse_polynomial("z^2 - w^3");
  GQ c = exact_level(std::polar(1e-3, 0.3));
  auto bp = projection_branch_points(f, c, 1.0);
  REQUIRE(bp.size() == 3);
  for (auto w : bp) {
    CHECK(std::abs(w) == doctest::Approx(std::cbrt(1e-3)).epsilon(1e-9));
    CHECK(std::abs(std::pow(w, 3) + c.to_complex()) < 1e-14);
  }
  CHECK(projection_branch_points(f, c, 0.05).empty());
}

TEST_CASE("isolation radius") {
  CHECK(std::isinf(isolation_radius(parse_polynomial("z^2 - w^3"))));
  // the two cusps of (z^2 - w^3)((z-w)^2 - w^3) also meet at (1/8, 1/4)
  double r = isolation_radius(parse_polynomial("(z^2-w^3)*((z-w)^2-w^3)"));
  CHECK(r == doctest::Approx(std::hypot(0.125, 0.25)).epsilon(1e-9));
}

TEST_CASE("schedule and extrapolation") {
  Schedule s;
  auto c = s.c_values(2);
  REQUIRE(c.size() == 6);
  CHECK(c[0] == doctest::Approx(1e-3 * 0.16));
  for (std::size_t k = 1; k < c.size(); ++k) CHECK(c[k] / c[k - 1] == doctest::Approx(0.25));

  std::vector<double> x;
  for (int k = 0; k < 6; ++k) x.push_back(3.0 - std::pow(0.5, k));
  auto e = aitken_tail(x);
  CHECK(e.value == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(aitken_tail({2.0}).value == 2.0);
}

TEST_CASE("horn distance uses all conjugates") {
  HornSpec h{PuiseuxSeries::monomial(GQ(q(1)), q(3, 2)), q(2), 1.0};
  cplx w = 0.01;
  cplx z = -std::pow(w, 1.5) + 0.5 * w * w;  // near the second conjugate
  CHECK(horn_distance(h, z, w) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("closed forms and Langevin identity") {
  auto a = setup("z^2 - w^3");
  CHECK(closed_form_total(a.canyons[0]) == doctest::Approx(6 * pi));
  auto L = langevin_check(a.f, a.polars, a.canyons, a.lfa);
  CHECK(L.identity);
  CHECK(L.mu == 2);
  CHECK(L.closed_form == doctest::Approx(6 * pi));

  auto b = setup("1/4*z^4 - 1/5*w^5");
  CHECK(closed_form_total(b.canyons[0]) == doctest::Approx(30 * pi));
  auto L4 = langevin_check(b.f, b.polars, b.canyons, b.lfa);
  CHECK(L4.identity);
  CHECK(L4.lhs == q(15));

  auto c = setup("z^2 - w^2");
  auto L2 = langevin_check(c.f, c.polars, c.canyons, c.lfa);
  CHECK(L2.identity);
  CHECK(L2.closed_form == doctest::Approx(4 * pi));
  CHECK(L2.rhs == q(c.lfa.m * (c.lfa.m - 1)));

  auto d = setup("z^3 - 3*z*w^5");
  CHECK(closed_form_total(d.canyons[0]) == doctest::Approx(30 * pi));
}

TEST_CASE("sheet count equals h") {
  auto a = setup("z^2 - w^3");
  CHECK(sheet_count(a.f, a.canyons[0], cplx(0.7, 0.2)) == 3);
  auto b = setup("1/4*z^4 - 1/5*w^5");
  CHECK(sheet_count(b.f, b.canyons[0], cplx(0.5, -0.4)) == 5);
}

TEST_CASE("Dirac profile needs a degenerate direction") {
  auto a = setup("z^2 - w^2");
  CHECK_THROWS_AS(dirac_profile(a.f, 1.0, a.canyons, a.lfa), NotDegenerateDirection);
}

TEST_CASE("level set quadrature: w-chart and z-chart agree on the ball") {
  BiPoly f = parse_polynomial("z^2 - w^3");
  IntervalSpec spec;
  spec.whole = true;
  spec.eta = 0.4;
  cplx c = std::polar(1e-4, 0.3);
  GridParams g;
  double w = integrate_levelset(f, c, spec, g);
  g.z_chart = true;
  double z = integrate_levelset(f, c, spec, g);
  CHECK(w > 0);
  CHECK(std::fabs(w - z) < 0.01 * w);
  CHECK(chart_name(g) == "z-chart");
}

TEST_CASE("degenerate level is rejected") {
  BiPoly f = parse_polynomial("z^2 - w^3");
  IntervalSpec spec;
  spec.whole = true;
  CHECK_THROWS_AS(integrate_levelset(f, 1e-300, spec), DegenerateLevel);
}

TEST_CASE("canyon total of z^2 - w^3") {
  auto a = setup("z^2 - w^3");
  auto r = canyon_total(a.f, a.canyons[0]);
  CHECK(r.closed_form == doctest::Approx(6 * pi));
  CHECK(r.relative_gap < 0.02);
  CHECK(r.c_schedule.size() == 6);
  CHECK(r.per_c.size() == r.radii.size());
  for (auto& row : r.per_c)
    for (double v : row) CHECK(std::isfinite(v));
}

}  // TEST_SUITE
