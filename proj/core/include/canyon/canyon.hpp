#pragma once

#include "canyon/leading_form.hpp"
#include "canyon/puiseux.hpp"

#include <optional>
#include <vector>

namespace canyon {

QExt gradient_degree(const BiPoly& f, const PolarRecord& polar);

struct GradientSpotCheck {
  bool passed = false;
  int attempts = 0;
  cplx u;
  double slope_at_d = 0, expected_at_d = 0;
  double slope_below = 0, expected_below = 0;
};
// Numeric O_y of |grad f| along γ + u y^e at e = d and e = d - 1/64, with u
// drawn from the annulus 0.5 <= |u| <= 2 (up to 8 draws).
GradientSpotCheck gradient_degree_spot_check(const BiPoly& f, const PolarRecord& polar,
                                             const Rational& d, unsigned long seed = 1);

struct CanyonRecord {
  int id = 0;
  QExt d;
  PuiseuxSeries representative;  // polar truncated at d
  std::vector<int> members;      // polar record indices
  int m_gr = 0;                  // with multiplicity and conjugates
  int m_branch = 0;              // polars of one conjugate copy of the canyon
  QExt mu_gr;                    // sum of (h_j - 1) over members
  bool minimal = false;
  bool tableland = false;
  std::optional<cplx> tangent;   // direction [c : 1]; unset for the degree-one canyon
};

// Fills d_gr and canyon_id of `polars` and groups them into canyons.
std::vector<CanyonRecord> build_canyons(const BiPoly& f, std::vector<PolarRecord>& polars,
                                        const LeadingFormAnalysis& lfa);

struct LojasiewiczProfile {
  std::vector<std::pair<Rational, Rational>> breakpoints;  // (e, L), increasing e
  Rational eval(const Rational& e) const;
  Rational e_min() const { return breakpoints.front().first; }
  Rational e_max() const { return breakpoints.back().first; }
};

struct ProfileParts {
  Rational L_delta, L_gr;
};
// L_Δ and L_gr from weighted orders of the shifted series for one weight.
ProfileParts lojasiewicz_parts(const BiSeries& D, const BiSeries& FZ, const BiSeries& FW,
                               const Rational& e);

// e_max unset selects d + 1. Deepens the polar expansion when the current
// truncation cannot certify the weighted orders.
LojasiewiczProfile lojasiewicz_profile(const BiPoly& f, const PolarRecord& polar,
                                       std::optional<Rational> e_max = std::nullopt);

struct MonotonicityReport {
  Rational tan_bottom, tan_top, d;
  bool above_minus_one = true;  // L > -1 on (1, tanθ_1)
  bool increasing = true;       // non-decreasing on [tanθ_1, tanθ_top]
  bool decreasing = true;       // non-increasing on [tanθ_top, d]
  bool strictly_near_d = true;  // negative slope just left of d
  bool value_at_d = true;       // L(d) = -d
  bool minimum_at_d = true;     // L >= -d on [1, d]
  bool all() const {
    return above_minus_one && increasing && decreasing && strictly_near_d && value_at_d &&
           minimum_at_d;
  }
};
MonotonicityReport check_monotonicity(const BiPoly& f, const PolarRecord& polar,
                                      const LojasiewiczProfile& L);

// f = unit * (z - ζ(w))^m with ζ an integral power series.
bool constant_curvature_check(const BiPoly& f);

// Re-expands the polar to at least `depth` (returns matching record).
PolarRecord deepen_polar(const BiPoly& f, const PolarRecord& polar, const Rational& depth);

}  // namespace canyon
