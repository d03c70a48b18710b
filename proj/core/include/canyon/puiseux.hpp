#pragma once

#include "canyon/newton_polygon.hpp"
#include "canyon/series.hpp"

#include <optional>
#include <vector>

namespace canyon {

// One conjugate class of Newton-Puiseux roots sharing a multiplicity.
struct RootBundle {
  PuiseuxSeries series;  // principal representative
  int multiplicity = 1;
  int class_size = 1;    // = series.N()
  std::vector<PuiseuxSeries> members() const { return conjugates(series); }
};

struct PolarRecord {
  RootBundle root;
  QExt h;
  cplx a;                 // F(0,W) = a W^h + ...
  std::optional<GQ> a_exact;
  QExt d_gr;              // filled by canyon analysis; ∞ when h = ∞
  std::optional<int> canyon_id;
};

struct SolverOptions {
  double cluster_tol = 1e-6;   // numeric edge-root clustering (relative)
  long max_den = 4096;         // Gaussian-rational recognition of edge roots
};

// Roots of g with positive order, as conjugate classes. g must be regular
// in z (g(z,0) not identically zero).
std::vector<RootBundle> newton_puiseux_roots(const BiPoly& g, const Rational& trunc,
                                             const SolverOptions& opt = {});

struct HValue {
  QExt h;
  cplx a;
  std::optional<GQ> a_exact;
};
// Order of f(γ(y), y); for a polar the column-0 coefficients of F are
// certified to twice the truncation order of γ.
HValue h_value(const BiPoly& f, const PuiseuxSeries& gamma, bool gamma_is_polar = true);

// Polars of a mini-regular f with O(f) >= 2. With trunc unset, the default
// depth 2(1 + max h) is used, doubling on truncation failures.
std::vector<PolarRecord> polars(const BiPoly& f, std::optional<Rational> trunc = std::nullopt);

// Multiplicity-expanded list of polar members (each conjugate listed, each
// repeated by multiplicity), with the index of the owning record.
struct PolarMember {
  PuiseuxSeries series;
  int record;
};
std::vector<PolarMember> expand_members(const std::vector<PolarRecord>& polars);

// Truncation depth used by `polars` for a given f (after the adaptive pass).
Rational default_trunc(const std::vector<PolarRecord>& polars);

}  // namespace canyon
