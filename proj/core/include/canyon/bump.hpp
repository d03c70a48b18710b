#pragma once

#include "canyon/canyon.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace canyon {

// a·δ^L; the zero word 0_ν has a = 0 and L = ∞.
struct CurvatureWord {
  double a = 0;
  QExt L = QExt::inf();

  static CurvatureWord zero() { return {}; }
  bool is_zero() const { return a == 0; }
  std::string str() const;
};
bool operator<(const CurvatureWord& x, const CurvatureWord& y);
inline bool operator>(const CurvatureWord& x, const CurvatureWord& y) { return y < x; }
// x ≫ y: strictly smaller exponent.
bool substantially_larger(const CurvatureWord& x, const CurvatureWord& y);

// R(u) = |D(u)|² (1+|u|²)^α / (Σ|P_k(u)|² + β)³.
//   d > 1: D = b² p', P = {p}, α = 0, β = b²; for a canyon tangent to
//          [c : 1] with c != 0, P = {p, ha − c p} and β = 0
//   d = 1: D = Δ_H(u,1), P = {H_z(u,1), H_w(u,1)}, α = 1, β = 0
struct RFunction {
  enum class Kind { HighDegree, UnitDegree };
  Kind kind = Kind::HighDegree;
  int canyon_id = 0;
  Rational d;
  std::vector<cplx> p;  // d > 1 only
  double b = 0;         // d > 1 only
  std::vector<cplx> D;
  std::vector<std::vector<cplx>> P;
  int alpha = 0;
  double beta = 0;
  double search_radius = 4;

  double eval(cplx u) const;
  // ∂R/∂x + i ∂R/∂y
  cplx gradient(cplx u) const;
};

RFunction r_function(const BiPoly& f, const CanyonRecord& canyon,
                     const std::vector<PolarRecord>& polars);

struct Ring {
  cplx center;
  double radius = 0;
};

struct BumpRecord {
  int canyon_id = 0;
  std::vector<cplx> locations;
  double R_value = 0;
  Rational L_value;
  std::optional<Ring> ring;
};

struct BumpOptions {
  int grid = 256;
  double grad_tol = 1e-10;
  double cluster_dist = 1e-6;
  double ring_radius_tol = 1e-6;
  double ring_value_tol = 1e-9;
};

std::vector<BumpRecord> find_bumps(const RFunction& R, const BumpOptions& opt = {});

struct LandscapeRow {
  double re, im, R;
};
std::vector<LandscapeRow> landscape(const RFunction& R, int grid = 256);
void write_landscape_csv(std::ostream& os, const std::vector<LandscapeRow>& rows);

struct WordFit {
  CurvatureWord word;
  double exponent_raw = 0;
  double r_squared = 0;
  int points = 0;
};
WordFit fit_curvature_word_detail(const BiPoly& f, const PuiseuxSeries& gamma, cplx u,
                                  const Rational& e);
inline CurvatureWord fit_curvature_word(const BiPoly& f, const PuiseuxSeries& gamma, cplx u,
                                        const Rational& e) {
  return fit_curvature_word_detail(f, gamma, u, e).word;
}

}  // namespace canyon
