#include "canyon/parse.hpp"
#include "canyon/puiseux.hpp"

#include <doctest.h>

#include <cmath>

using namespace canyon;

namespace {

Rational q(long a, long b = 1) { return make_rational(a, b); }

int mult_sum(const std::vector<RootBundle>& b) {
  int s = 0;
  for (auto& x : b) s += x.multiplicity * x.class_size;
  return s;
}

}  // namespace

TEST_SUITE("puiseux-solver") {

TEST_CASE("roots of z^2 - w^3") {
  auto r = newton_puiseux_roots(parse_polynomial("z^2 - w^3"), q(6));
  REQUIRE(r.size() == 1);
  CHECK(r[0].multiplicity == 1);
  CHECK(r[0].class_size == 2);
  CHECK(r[0].series.N() == 2);
  REQUIRE(r[0].series.terms().size() == 1);
  CHECK(r[0].series.terms()[0].q == q(3, 2));
  CHECK(std::abs(std::abs(r[0].series.terms()[0].c) - 1.0) < 1e-12);
  CHECK(r[0].members().size() == 2);
}

TEST_CASE("roots with multiplicity") {
  auto r = newton_puiseux_roots(parse_polynomial("z^3"), q(6));
  REQUIRE(r.size() == 1);
  CHECK(r[0].multiplicity == 3);
  CHECK(r[0].series.is_zero());

  auto s = newton_puiseux_roots(parse_polynomial("4*z^3 - 4*z*w^2"), q(6));
  REQUIRE(s.size() == 3);
  int zero = 0, plus = 0, minus = 0;
  for (auto& b : s) {
    CHECK(b.multiplicity == 1);
    if (b.series.is_zero()) ++zero;
    else if (std::abs(b.series.terms()[0].c - 1.0) < 1e-12) ++plus;
    else if (std::abs(b.series.terms()[0].c + 1.0) < 1e-12) ++minus;
  }
  CHECK(zero == 1);
  CHECK(plus == 1);
  CHECK(minus == 1);
}

TEST_CASE("polars and h") {
  auto p4 = polars(parse_polynomial("1/4*z^4 - 1/5*w^5"));
  REQUIRE(p4.size() == 1);
  CHECK(p4[0].root.multiplicity == 3);
  CHECK(p4[0].h == QExt(q(5)));

  auto p2 = polars(parse_polynomial("z^2 - w^3"));
  REQUIRE(p2.size() == 1);
  CHECK(p2[0].h == QExt(q(3)));

  auto p3 = polars(parse_polynomial("z^3 - 3*z*w^5"));
  REQUIRE(p3.size() == 1);
  CHECK(p3[0].root.class_size == 2);
  CHECK(p3[0].root.series.order() == QExt(q(5, 2)));
  CHECK(p3[0].h == QExt(q(15, 2)));

  auto pm = polars(parse_polynomial("(z-w^2)^3"));
  REQUIRE(pm.size() == 1);
  CHECK(pm[0].h.infinite);
}

TEST_CASE("h_value with leading coefficient") {
  auto a = h_value(parse_polynomial("1/4*z^4 - 1/5*w^5"), PuiseuxSeries::zero());
  CHECK(a.h == QExt(q(5)));
  REQUIRE(a.a_exact);
  CHECK(*a.a_exact == GQ(q(-1, 5)));

  auto b = h_value(parse_polynomial("z^2 - w^3"), PuiseuxSeries::zero());
  CHECK(b.h == QExt(q(3)));
  CHECK(std::abs(b.a + 1.0) < 1e-15);

  auto c = h_value(parse_polynomial("z^4 - 2*z^2*w^2 - w^100"), PuiseuxSeries::zero());
  CHECK(c.h == QExt(q(100)));
  CHECK(std::abs(c.a + 1.0) < 1e-15);
}

TEST_CASE("multiplicities sum to m - 1") {
  for (const char* t : {"z^4 - 2*z^2*w^2 - w^100", "(z^2-w^3)*((z-w)^2-w^3)", "z^5 - w^5",
                        "z^3 + z*w^4 + w^5", "z^4 + z^3*w^27 + z^2*w^63 - w^100"}) {
    BiPoly f = parse_polynomial(t);
    auto P = polars(f);
    int s = 0;
    for (auto& p : P) s += p.root.multiplicity * p.root.class_size;
    CHECK(s == f.order() - 1);
    CHECK(expand_members(P).size() == static_cast<std::size_t>(s));
  }
  CHECK(mult_sum(newton_puiseux_roots(parse_polynomial("z^3 - w^5"), q(8))) == 3);
}

TEST_CASE("residuals vanish to the certified order") {
  BiPoly f = parse_polynomial("(z^2-w^3)*((z-w)^2-w^3)");
  BiPoly fz = f.dz();
  Rational T = q(4);
  auto roots = newton_puiseux_roots(fz, T);
  for (auto& b : roots) {
    long N = b.series.N();
    // log-slope of |f_z(γ(t^N), t^N)| in t on a geometric t-grid
    double t0 = 0.02, t1 = 0.01;
    auto res = [&](double t) {
      double y = std::pow(t, static_cast<double>(N));
      return std::abs(fz.eval(b.series.eval_t(t, N), y));
    };
    double r0 = res(t0), r1 = res(t1);
    if (r1 == 0 || r0 == 0) continue;
    double slope = std::log(r0 / r1) / std::log(t0 / t1);
    CHECK(slope >= N * T.get_d() - 0.1);
  }
}

TEST_CASE("tan theta_top equals the maximal contact with roots of f") {
  for (const char* t : {"z^4 - 2*z^2*w^2 - w^100", "(z^2-w^3)*((z-w)^2-w^3)", "z^3 - w^5",
                        "z^3 + z*w^4 + w^5", "1/4*z^4 - 1/5*w^5"}) {
    BiPoly f = parse_polynomial(t);
    auto P = polars(f);
    auto roots = newton_puiseux_roots(f, default_trunc(P));
    for (auto& p : P) {
      REQUIRE_FALSE(p.h.infinite);
      auto F = substitute_shift(f, p.root.series, QExt(p.h.value + 1));
      auto poly = build_polygon(F);
      QExt best(q(0));
      for (auto& r : roots) {
        QExt c = contact_order(p.root.series, r.series);
        if (best < c) best = c;
      }
      CHECK(best == QExt(poly.coslope_top()));
    }
  }
}

}  // TEST_SUITE
