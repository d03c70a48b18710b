#include "canyon/knot.hpp"

#include "canyon/errors.hpp"

#include <cmath>
#include <random>

namespace canyon {

std::pair<NetworkRecord, NetworkRecord> build_twin_networks(const BiPoly& f,
                                                            const std::vector<PolarRecord>& polars,
                                                            unsigned long seed,
                                                            const NetworkOptions& opt) {
  for (const auto& [g, k] : squarefree_z(f))
    if (k > 1) throw MultipleRootOfF("f has a multiple factor of multiplicity " + std::to_string(k));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> rad(0.5, 1.0), ang(0, 2 * M_PI);
  std::vector<cplx> used;
  auto draw = [&] {
    for (;;) {
      cplx e = std::polar(opt.eps_max * rad(rng), ang(rng));
      bool ok = true;
      for (cplx u : used)
        if (std::abs(u - e) < opt.min_separation) ok = false;
      if (ok) {
        used.push_back(e);
        return e;
      }
    }
  };
  NetworkRecord a{"epsilon", {}}, b{"delta", {}};
  for (std::size_t j = 0; j < polars.size(); ++j) {
    const PolarRecord& p = polars[j];
    if (p.d_gr.infinite || p.d_gr == QExt())
      throw PreconditionViolation("build_twin_networks: polar " + std::to_string(j) +
                                  " has no finite gradient degree");
    const Rational& d = p.d_gr.value;
    int copy = 0;
    for (const auto& g : p.root.members()) {
      PuiseuxSeries base = g.truncated_below(d, true);
      for (int k = 0; k < p.root.multiplicity; ++k, ++copy) {
        for (NetworkRecord* net : {&a, &b}) {
          cplx e = draw();
          NetworkMember m;
          m.series = base.plus_monomial(e, d);
          m.polar = static_cast<int>(j);
          m.copy = copy;
          m.d = d;
          m.eps = e;
          net->members.push_back(m);
        }
      }
    }
  }
  return {a, b};
}

LinkingMatrix linking_number(const NetworkRecord& a, const NetworkRecord& b) {
  LinkingMatrix L;
  L.total = QExt(Rational(0));
  for (const auto& x : a.members) {
    std::vector<QExt> row;
    for (const auto& y : b.members) {
      QExt c = direct_contact(x.series, y.series);
      if (c.infinite)
        throw IndeterminateAtTruncation("linking_number: perturbed members coincide");
      row.push_back(c);
      L.total = QExt(L.total.value + c.value);
    }
    L.entries.push_back(std::move(row));
  }
  return L;
}


long resultant_milnor(const BiPoly& f) {
  BiPoly A = f.dz(), B = f.dw();
  UPoly a0 = A.at_w_zero();
  if (a0.is_zero() || a0.order() != a0.degree() || a0.degree() != A.deg_z())
    throw OracleNotApplicable("resultant oracle: f_z(z,0) is not c*z^deg, roots escape the origin");
  if (B.deg_z() < 0) throw NonIsolatedSingularity("f_w vanishes identically");
  UPoly det = resultant_z(A, B);
  if (det.is_zero()) throw NonIsolatedSingularity("Res_z(f_z, f_w) vanishes identically");
  return det.order();
}

MilnorResult milnor_number(const BiPoly& f, const std::vector<PolarRecord>& polars) {
  MilnorResult r;
  Rational sum = 0;
  for (const auto& p : polars) {
    if (p.h.infinite) throw NonIsolatedSingularity("a polar is also a root of f_w");
    for (const auto& g : p.root.members()) {
      BiSeries Fw = substitute_shift_full(f.dw(), g);
      std::optional<Rational> ord;
      for (const auto& [q, c] : Fw.column(0))
        if (std::abs(c) > 0 && (!ord || q < *ord)) ord = q;
      if (!ord || (!Fw.trunc_order().infinite && QExt(*ord) > Fw.trunc_order()))
        throw InsufficientTruncation("milnor_number: f_w(γ) vanishes to the truncation order");
      for (int k = 0; k < p.root.multiplicity; ++k) {
        r.per_polar.push_back(*ord);
        sum += *ord;
      }
    }
  }
  if (sum.get_den() != 1)
    throw PreconditionViolation("milnor_number: non-integral sum " + to_pq(sum));
  r.mu = sum.get_num().get_si();
  try {
    r.oracle = resultant_milnor(f);
    r.agrees = *r.oracle == r.mu;
  } catch (const OracleNotApplicable&) {
    r.agrees = true;
  }
  return r;
}

}  // namespace canyon
