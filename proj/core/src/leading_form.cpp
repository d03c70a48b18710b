#include "canyon/leading_form.hpp"

#include "canyon/errors.hpp"

#include <algorithm>
#include <random>
#include <tuple>

namespace canyon {

bool is_mini_regular(const BiPoly& f) {
  int m = f.order();
  if (m < 0) return false;
  return !f.coeff(m, 0).is_zero();
}

LeadingFormAnalysis leading_form_analysis(const BiPoly& f) {
  if (f.is_zero()) throw PreconditionViolation("leading_form_analysis: f = 0");
  LeadingFormAnalysis a;
  a.m = f.order();
  if (a.m < 2) throw PreconditionViolation("leading_form_analysis: O(f) < 2");
  BiPoly H = f.homogeneous(a.m);
  if (H.coeff(a.m, 0).is_zero())
    throw NotMiniRegular("H_m(1,0) = 0; apply mini_regularize first");
  for (const auto& cr : roots_with_multiplicity(H.at_w_one()))
    a.roots.push_back({cr.z, cr.mult});
  a.r = static_cast<int>(a.roots.size());
  a.degenerate = a.r < a.m;
  return a;
}

Unitary identity_unitary() {
  return {GQ::integer(1), GQ(), GQ(), GQ::integer(1)};
}

Unitary inverse(const Unitary& U) {
  return {U[0].conj(), U[2].conj(), U[1].conj(), U[3].conj()};
}

bool is_unitary(const Unitary& U) {
  GQ one = GQ::integer(1);
  return U[0] * U[0].conj() + U[2] * U[2].conj() == one &&
         U[1] * U[1].conj() + U[3] * U[3].conj() == one &&
         U[0].conj() * U[1] + U[2].conj() * U[3] == GQ();
}

namespace {

std::vector<Unitary> candidate_unitaries(unsigned long seed) {
  // integer points on S^3 of radius s give a = (x1+i x2)/s, c = (x3+i x4)/s
  std::vector<std::tuple<int, int, int, int, int>> pts;
  for (int s = 2; s <= 13; ++s)
    for (int x1 = -s; x1 <= s; ++x1)
      for (int x2 = -s; x2 <= s; ++x2)
        for (int x3 = -s; x3 <= s; ++x3) {
          int rest = s * s - x1 * x1 - x2 * x2 - x3 * x3;
          if (rest < 0) continue;
          int x4 = 0;
          while (x4 * x4 < rest) ++x4;
          if (x4 * x4 != rest) continue;
          if ((x1 == 0 && x2 == 0) || (x3 == 0 && x4 == 0)) continue;
          pts.emplace_back(s, x1, x2, x3, x4);
        }
  std::mt19937_64 rng(seed);
  std::shuffle(pts.begin(), pts.end(), rng);
  std::vector<Unitary> out;
  out.reserve(pts.size());
  for (auto [s, x1, x2, x3, x4] : pts) {
    GQ a(make_rational(x1, s), make_rational(x2, s));
    GQ c(make_rational(x3, s), make_rational(x4, s));
    out.push_back({a, -c.conj(), c, a.conj()});
  }
  return out;
}

}  // namespace

MiniRegularization mini_regularize(const BiPoly& f, unsigned long seed) {
  if (f.is_zero()) throw PreconditionViolation("mini_regularize: f = 0");
  MiniRegularization r;
  if (is_mini_regular(f)) {
    r.g = f;
    r.U = identity_unitary();
    r.identity = true;
    return r;
  }
  int m = f.order();
  BiPoly H = f.homogeneous(m);
  int tried = 0;
  for (const Unitary& U : candidate_unitaries(seed)) {
    if (++tried > 4096) break;
    if (H.eval(U[0], U[2]).is_zero()) continue;
    r.g = f.compose_linear(U);
    r.U = U;
    r.identity = false;
    if (is_mini_regular(r.g)) return r;
  }
  throw ExhaustedCandidates("no mini-regularizing unitary found among candidates");
}

}  // namespace canyon
