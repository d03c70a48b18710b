#include "canyon/bump.hpp"
#include "canyon/canyon.hpp"
#include "canyon/parse.hpp"

#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

using namespace canyon;

namespace {

Rational q(long a, long b = 1) { return make_rational(a, b); }

struct Analyzed {
  BiPoly f;
  LeadingFormAnalysis lfa;
  std::vector<PolarRecord> polars;
  std::vector<CanyonRecord> canyons;
};

Analyzed analyze(const char* text) {
  Analyzed a;
  a.f = parse_polynomial(text);
  a.lfa = leading_form_analysis(a.f);
  a.polars = polars(a.f);
  a.canyons = build_canyons(a.f, a.polars, a.lfa);
  return a;
}

// Exact weighted order min(i e + j) over the monomials of a polynomial given
// as a map of exponents; independent of the library's series machinery.
using Mono = std::map<std::pair<int, int>, long>;

Mono mono_of(const BiPoly& f) {
  Mono m;
  for (auto& [k, c] : f.terms()) m[k] = 1;
  return m;
}

Rational wo(const Mono& m, const Rational& e) {
  Rational best = -1;
  for (auto& [k, c] : m) {
    Rational v = e * k.first + k.second;
    if (best < 0 || v < best) best = v;
  }
  return best;
}

}  // namespace

TEST_SUITE("canyon-analysis") {

TEST_CASE("gradient degrees") {
  auto g = analyze("z^4 - 2*z^2*w^2 - w^100");
  for (auto& p : g.polars) {
    if (p.root.series.is_zero()) CHECK(p.d_gr == QExt(q(97)));
    else CHECK(p.d_gr == QExt(q(1)));
  }
  for (auto [m, n] : std::vector<std::pair<int, int>>{{2, 3}, {4, 5}, {3, 7}}) {
    std::string t = "z^" + std::to_string(m) + " - w^" + std::to_string(n);
    auto a = analyze(t.c_str());
    REQUIRE(a.polars.size() == 1);
    CHECK(gradient_degree(a.f, a.polars[0]) == QExt(q(n - 1, m - 1)));
  }
}

TEST_CASE("gradient degree numeric spot check") {
  for (const char* t : {"z^2 - w^3", "1/4*z^4 - 1/5*w^5", "z^3 - 3*z*w^5"}) {
    auto a = analyze(t);
    auto& p = a.polars[0];
    auto sc = gradient_degree_spot_check(a.f, p, p.d_gr.value, 7);
    CHECK(sc.passed);
    CHECK(sc.attempts <= 8);
  }
}

TEST_CASE("canyons: worked cases") {
  auto f4 = analyze("1/4*z^4 - 1/5*w^5");
  REQUIRE(f4.canyons.size() == 1);
  CHECK(f4.canyons[0].d == QExt(q(4, 3)));
  CHECK(f4.canyons[0].m_gr == 3);
  CHECK(f4.canyons[0].mu_gr == QExt(q(12)));
  CHECK(f4.canyons[0].minimal);
  CHECK(f4.canyons[0].tableland);

  auto g = analyze("z^4 - 2*z^2*w^2 - w^100");
  REQUIRE(g.canyons.size() == 2);
  for (auto& c : g.canyons) {
    if (c.d == QExt(q(97))) {
      CHECK(c.minimal);
      CHECK(c.m_gr == 1);
    } else {
      CHECK(c.d == QExt(q(1)));
      CHECK(c.m_gr == 2);
      CHECK_FALSE(c.minimal);
      CHECK_FALSE(c.tableland);
    }
  }

  auto h = analyze("z^2 - w^2");
  REQUIRE(h.canyons.size() == 1);
  CHECK(h.canyons[0].d == QExt(q(1)));
  CHECK(h.canyons[0].m_gr == 1);
  CHECK(h.canyons[0].minimal);

  auto c = analyze("z^3 - 3*z*w^5");
  REQUIRE(c.canyons.size() == 1);
  CHECK(c.canyons[0].mu_gr == QExt(q(13)));
  CHECK(c.canyons[0].m_gr == 2);
}

TEST_CASE("canyon invariants over a corpus") {
  for (const char* t : {"z^4 - 2*z^2*w^2 - w^100", "(z^2-w^3)*((z-w)^2-w^3)", "z^5 - w^5",
                        "z^3 + z*w^4 + w^5", "z^4 + z^3*w^27 + z^2*w^63 - w^100", "z^3 - w^7"}) {
    auto a = analyze(t);
    int unit = 0;
    for (auto& p : a.polars)
      if (p.d_gr == QExt(q(1))) unit += p.root.multiplicity * p.root.class_size;
    CHECK(unit == a.lfa.r - 1);
    for (auto& c : a.canyons) {
      if (c.d > QExt(q(1))) {
        CHECK(c.minimal);
        CHECK(c.tableland == !c.d.infinite);
      }
    }
    // distinct minimal canyons with d > 1 are disjoint
    for (std::size_t i = 0; i < a.canyons.size(); ++i)
      for (std::size_t j = i + 1; j < a.canyons.size(); ++j) {
        auto& x = a.canyons[i];
        auto& y = a.canyons[j];
        if (x.d <= QExt(q(1)) || y.d <= QExt(q(1)) || x.d.infinite || y.d.infinite) continue;
        QExt co = contact_order(x.representative, y.representative);
        CHECK(co < std::min(x.d, y.d));
      }
  }
}

TEST_CASE("Lojasiewicz profile of z^2 - w^3 against brute-force weighted orders") {
  auto a = analyze("z^2 - w^3");
  auto L = lojasiewicz_profile(a.f, a.polars[0]);
  // γ = 0: L(e) = O_e(Δ_f) - 3 min(O_e(f_z), O_e(f_w))
  Mono D = mono_of(delta_poly(a.f)), Fz = mono_of(a.f.dz()), Fw = mono_of(a.f.dw());
  for (int k = 0; k <= 48; ++k) {
    Rational e = q(1) + q(k, 24);
    Rational oracle = wo(D, e) - 3 * std::min(wo(Fz, e), wo(Fw, e));
    CHECK(L.eval(e) == oracle);
  }
  CHECK(L.eval(q(3, 2)) == q(-1, 2));
  CHECK(L.eval(q(2)) == q(-2));
  CHECK(L.eval(q(5, 4)) == q(1) - q(5, 4));
  CHECK(L.eval(q(7, 4)) == q(4) - 3 * q(7, 4));
}

TEST_CASE("Lojasiewicz profile values at d") {
  auto f4 = analyze("1/4*z^4 - 1/5*w^5");
  CHECK(lojasiewicz_profile(f4.f, f4.polars[0]).eval(q(4, 3)) == q(-4, 3));
  auto f2 = analyze("1/2*z^2 - 1/3*w^3");
  CHECK(lojasiewicz_profile(f2.f, f2.polars[0]).eval(q(2)) == q(-2));
}

TEST_CASE("monotonicity pattern on a corpus") {
  for (const char* t : {"z^2 - w^3", "1/4*z^4 - 1/5*w^5", "z^3 - w^7", "z^3 - 3*z*w^5",
                        "z^4 - 2*z^2*w^2 - w^100", "(z^2-w^3)*((z-w)^2-w^3)", "z^3 + z*w^4 + w^5",
                        "z^4 + z^3*w^27 + z^2*w^63 - w^100"}) {
    auto a = analyze(t);
    for (auto& p : a.polars) {
      if (p.d_gr.infinite || p.d_gr <= QExt(q(1))) continue;
      auto L = lojasiewicz_profile(a.f, p);
      auto mono = check_monotonicity(a.f, p, L);
      CHECK_MESSAGE(mono.all(), t);
      CHECK(L.eval(p.d_gr.value) == -p.d_gr.value);
      for (auto& [e, v] : L.breakpoints)
        if (e <= p.d_gr.value) CHECK(v >= -p.d_gr.value);
    }
  }
}

TEST_CASE("tableland members do not beat the tableland exponent") {
  auto a = analyze("1/4*z^4 - 1/5*w^5");
  auto& c = a.canyons[0];
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> U(0.3, 2.0), A(0, 6.28);
  for (int k = 0; k < 20; ++k) {
    cplx u = std::polar(U(rng), A(rng));
    auto fit = fit_curvature_word_detail(a.f, c.representative, u, c.d.value);
    CHECK(fit.exponent_raw >= -2 * c.d.to_double() - 0.05);
  }
}

TEST_CASE("constant curvature criterion") {
  CHECK(constant_curvature_check(parse_polynomial("(z-w^2)^3")));
  CHECK_FALSE(constant_curvature_check(parse_polynomial("z^2 - w^3")));
  CHECK_FALSE(constant_curvature_check(parse_polynomial("z^2 - w^2")));
  CHECK(constant_curvature_check(parse_polynomial("(z - w - w^3)^2")));
}

TEST_CASE("deepened polar keeps its data") {
  auto a = analyze("(z^2-w^3)*((z-w)^2-w^3)");
  for (auto& p : a.polars) {
    auto d = deepen_polar(a.f, p, q(20));
    CHECK(d.h == p.h);
    CHECK(d.root.multiplicity == p.root.multiplicity);
    CHECK(contact_order(d.root.series, p.root.series) >=
          std::min(p.root.series.trunc_order(), QExt(q(20))));
  }
}

}  // TEST_SUITE
