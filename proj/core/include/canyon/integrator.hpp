#pragma once

#include "canyon/knot.hpp"

#include <optional>
#include <string>
#include <vector>

namespace canyon {

// I(α, e, r; η) = {z = α(w) + u w^e, |u| <= r, ‖(z,w)‖ <= η}; whole = the ball.
struct IntervalSpec {
  PuiseuxSeries center;
  Rational e = 1;
  double r = 1;
  double eta = 0.4;
  bool whole = false;
};

struct GridParams {
  int per_efold = 16;          // radial samples per unit of log-radius
  int angular = 256;
  double inner_factor = 1e-3;  // inner cut of the w-disk: inner_factor * |c|
  double curve_inner = 1e-14;  // the same cut on the limit curve c = 0
  int patch_per_efold = 12;    // local grids around branch points of the projection
  int patch_angular = 128;
  double patch_depth = 1e-10;  // innermost patch radius relative to the patch
  bool z_chart = false;        // exchange z and w (whole ball only)
};
std::string chart_name(const GridParams& g);

// A horn {z = α(w) + u w^e, |u| <= r} around all conjugates of α.
struct HornSpec {
  PuiseuxSeries center;
  Rational e = 1;
  double r = 1;
};
// Minimal |z − α_j(w)| / |w|^e over the conjugates α_j.
double horn_distance(const HornSpec& h, cplx z, cplx w);

struct LevelIntegral {
  double whole = 0;               // over the level set inside the ball
  double horn_union = 0;          // over the union of the extra horns
  double horn_band = 0;           // within a grid cell of their boundary
  std::vector<double> interval;   // one per requested radius
  double inner_bound = 0;         // bound on the cut-out inner disks
  int branch_points = 0;          // in the lifted t-disk
  long points = 0;
};

// Level c snapped to a dyadic Gaussian rational (relative error < 2^-40) so
// the branch locus Res_z(f − c, f_z) can be formed exactly.
GQ exact_level(cplx c);
// Branch points of the projection (z, w) -> w on f = c with 0 < |w| <= wmax.
std::vector<cplx> projection_branch_points(const BiPoly& f, const GQ& c, double wmax);
// Distance to the nearest singular point of f = 0 other than the origin.
double isolation_radius(const BiPoly& f);

// One pass in the frame centered at `center` (terms below e); every radius in
// `radii` gives the interval I(center, e, r).
LevelIntegral integrate_levelset_multi(const BiPoly& f, cplx c, const PuiseuxSeries& center,
                                       const Rational& e, const std::vector<double>& radii,
                                       double eta, const GridParams& grid = {},
                                       const std::vector<HornSpec>& extra = {});
double integrate_levelset(const BiPoly& f, cplx c, const IntervalSpec& spec,
                          const GridParams& grid = {});

struct Schedule {
  double eta = 0.4;         // capped at half the isolation radius
  double c0_factor = 1e-3;  // c0 = c0_factor * eta^m
  double ratio = 0.25;
  int steps = 6;
  double phase = 0.3;       // arg c
  std::vector<double> radii{4, 8, 16, 32};
  GridParams grid;
  bool eta_halving = false;  // canyon_total: repeat at η/2 as a consistency check
  std::vector<double> c_values(int m) const;
};

struct Extrapolation {
  double value = 0;
  double error = 0;
};
// Aitken Δ² on the last three terms; falls back to the last term.
Extrapolation aitken_tail(const std::vector<double>& x);

struct IntegrationResult {
  double value = 0;
  double closed_form = 0;
  double relative_gap = 0;
  double error_estimate = 0;
  std::vector<double> c_schedule;
  std::vector<double> radii;
  // per_c and whole_per_c already have the limit curve f = 0 subtracted
  std::vector<std::vector<double>> per_c;  // [radius][c]
  std::vector<double> whole_per_c;
  std::vector<double> curve;               // c = 0 integral per radius
  double whole_curve = 0;
  std::vector<double> captured_fraction;   // largest-radius interval / whole, per c
  std::vector<double> captured_error;      // with extra horns: quadrature bound on the fraction
  GridParams grid;
  double eta = 0;
  std::optional<double> half_eta_value;
};

IntegrationResult canyon_total(const BiPoly& f, const CanyonRecord& canyon,
                               const Schedule& schedule = {});

// Interval integral along the schedule, extrapolated in c.
IntegrationResult interval_total(const BiPoly& f, const IntervalSpec& spec,
                                 const Schedule& schedule = {});

double closed_form_total(const CanyonRecord& canyon);

struct DiracReport {
  cplx tangent;
  std::vector<double> sector_radii;
  std::vector<double> sector_totals;   // extrapolated in c, per sector radius
  double sector_total = 0;             // at the smallest radius
  std::vector<int> canyon_ids;
  double canyon_sum_numeric = 0;
  double canyon_sum_closed = 0;
  std::vector<double> sharpened_totals;  // I(γ, d − ε, 1) per canyon
  std::vector<double> sector_c_schedule;
  std::vector<double> captured_fraction; // union of canyon horns / whole disk, per sector c
  std::vector<double> captured_error;
  bool fraction_monotone = false;
  double relative_gap_sector_canyon = 0;
  double relative_gap_sector_closed = 0;
  std::vector<IntegrationResult> canyon_results;
};

DiracReport dirac_profile(const BiPoly& f, cplx tangent, const std::vector<CanyonRecord>& canyons,
                          const LeadingFormAnalysis& lfa, const Schedule& schedule = {},
                          const std::vector<double>& sector_radii = {1.0, 0.5},
                          double sector_ratio = 1e-2);

struct LangevinReport {
  long mu = 0;
  int m = 0, r = 0;
  Rational lhs;   // μ + m − 1
  Rational rhs;   // m(r−1) + Σ_{d>1}(μ_gr + m_gr)
  bool identity = false;
  double closed_form = 0;  // 2π(μ + m − 1)
  std::optional<IntegrationResult> numeric;
};

LangevinReport langevin_check(const BiPoly& f, const std::vector<PolarRecord>& polars,
                              const std::vector<CanyonRecord>& canyons,
                              const LeadingFormAnalysis& lfa,
                              const std::optional<Schedule>& numeric = std::nullopt);

// Number of level-set sheets over a generic u of the canyon chart.
int sheet_count(const BiPoly& f, const CanyonRecord& canyon, cplx u);

}  // namespace canyon
