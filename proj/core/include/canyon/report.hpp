#pragma once

#include "canyon/bump.hpp"
#include "canyon/integrator.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace canyon {

inline constexpr const char* kToolVersion = "0.1.0";

struct PipelineConfig {
  std::string input;                 // polynomial text
  std::optional<Rational> trunc;     // polar truncation order; adaptive when unset
  unsigned long seed = 1;            // mini-regularization, spot checks, twin networks
  double tol = 0.05;                 // relative tolerance for numeric vs closed form
  bool integrate = false;
  bool dirac = false;
  bool linking = false;
  int linking_seeds = 5;
  Schedule schedule;
  BumpOptions bumps;
};

struct StageStatus {
  std::string stage;
  bool requested = true;
  bool ok = true;
  bool skipped = false;
  std::string error_kind;
  std::string message;
};

struct PolarProfile {
  int polar = 0;
  LojasiewiczProfile profile;
  MonotonicityReport monotonicity;
};

struct LinkingRun {
  unsigned long seed = 0;
  LinkingMatrix matrix;
  std::vector<std::string> row_labels, col_labels;
};

struct AnalysisReport {
  PipelineConfig config;
  BiPoly input;
  MiniRegularization regularization;
  bool constant_curvature = false;
  LeadingFormAnalysis lfa;
  std::vector<PolarRecord> polars;
  std::vector<GradientSpotCheck> spot_checks;  // one per polar with finite d
  std::vector<CanyonRecord> canyons;
  std::vector<PolarProfile> profiles;
  std::vector<RFunction> r_functions;
  std::vector<BumpRecord> bumps;
  std::vector<double> closed_totals;           // 2π(μ_gr + m_gr) per canyon with d > 1
  std::optional<MilnorResult> milnor;
  std::optional<LangevinReport> langevin;
  std::vector<IntegrationResult> integrations;  // per canyon with 1 < d < inf
  std::vector<int> integration_canyons;
  std::vector<DiracReport> dirac;
  std::vector<LinkingRun> linking;
  std::vector<StageStatus> stages;

  bool failed() const;
  const StageStatus* stage(const std::string& name) const;
};

// parse -> mini_regularize -> polars -> canyons (+ profiles, bumps) ->
// closed forms -> [integrate] -> [dirac] -> [linking]. A parse failure is
// rethrown as ParseError; later failures are recorded per stage.
AnalysisReport run_pipeline(const PipelineConfig& config);

// Deterministic: no timings, stable key order, rationals as "p/q".
nlohmann::ordered_json to_json(const AnalysisReport& report);

// report.json, landscape_<canyon>.csv, profile_<polar>.csv. Throws IoError.
std::vector<std::filesystem::path> emit_artifacts(const AnalysisReport& report,
                                                  const std::filesystem::path& out_dir);

}  // namespace canyon
