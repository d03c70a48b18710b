#include "canyon/report.hpp"

#include "canyon/errors.hpp"
#include "canyon/parse.hpp"

#include <cmath>
#include <fstream>

namespace canyon {

using json = nlohmann::ordered_json;

bool AnalysisReport::failed() const {
  for (const auto& s : stages)
    if (s.requested && !s.ok) return true;
  return false;
}

const StageStatus* AnalysisReport::stage(const std::string& name) const {
  for (const auto& s : stages)
    if (s.stage == name) return &s;
  return nullptr;
}

namespace {

// Runs one stage; `gate` is empty when the stage may run, otherwise the
// reason it is skipped.
template <class Body>
bool run_stage(AnalysisReport& rep, const std::string& name, bool requested,
               const std::string& gate, bool gate_is_failure, Body&& body) {
  StageStatus st;
  st.stage = name;
  st.requested = requested;
  if (!requested) {
    st.skipped = true;
  } else if (!gate.empty()) {
    st.skipped = true;
    st.ok = !gate_is_failure;
    st.message = gate;
    if (gate_is_failure) st.error_kind = "Blocked";
  } else {
    try {
      body();
    } catch (const Error& e) {
      st.ok = false;
      st.error_kind = e.kind();
      st.message = e.what();
    } catch (const std::exception& e) {
      st.ok = false;
      st.error_kind = "InternalError";
      st.message = e.what();
    }
  }
  rep.stages.push_back(st);
  return st.ok && !st.skipped;
}

}  // namespace

AnalysisReport run_pipeline(const PipelineConfig& config) {
  AnalysisReport rep;
  rep.config = config;
  rep.input = parse_polynomial(config.input);
  rep.stages.push_back({"parse", true, true, false, "", ""});

  std::string blocked;
  bool blocked_fail = false;
  auto block = [&](const std::string& why, bool failure) {
    if (blocked.empty()) {
      blocked = why;
      blocked_fail = failure;
    }
  };

  BiPoly g;
  if (!run_stage(rep, "mini_regularize", true, blocked, blocked_fail, [&] {
        if (rep.input.order() < 2)
          throw PreconditionViolation("the origin is not a singular point (order " +
                                      std::to_string(rep.input.order()) + ")");
        rep.regularization = mini_regularize(rep.input, config.seed);
        g = rep.regularization.g;
        rep.lfa = leading_form_analysis(g);
      }))
    block("mini_regularize failed", true);

  run_stage(rep, "constant_curvature", true, blocked, blocked_fail,
            [&] { rep.constant_curvature = constant_curvature_check(g); });
  if (rep.constant_curvature) block("constant curvature: f = unit * (z - zeta(w))^m", false);

  if (!run_stage(rep, "polars", true, blocked, blocked_fail,
                 [&] { rep.polars = polars(g, config.trunc); }))
    block("polars failed", true);

  if (!run_stage(rep, "canyons", true, blocked, blocked_fail, [&] {
        rep.canyons = build_canyons(g, rep.polars, rep.lfa);
        for (const auto& p : rep.polars)
          if (!p.d_gr.infinite && p.d_gr.value > 1)
            rep.spot_checks.push_back(gradient_degree_spot_check(g, p, p.d_gr.value, config.seed));
      }))
    block("canyons failed", true);

  run_stage(rep, "profiles", true, blocked, blocked_fail, [&] {
    for (std::size_t i = 0; i < rep.polars.size(); ++i) {
      const auto& p = rep.polars[i];
      if (p.d_gr.infinite || p.d_gr.value <= 1) continue;
      PolarProfile pp;
      pp.polar = static_cast<int>(i);
      pp.profile = lojasiewicz_profile(g, p);
      pp.monotonicity = check_monotonicity(g, p, pp.profile);
      rep.profiles.push_back(std::move(pp));
    }
  });

  run_stage(rep, "bumps", true, blocked, blocked_fail, [&] {
    for (const auto& c : rep.canyons) {
      if (c.d.infinite) continue;
      RFunction R = r_function(g, c, rep.polars);
      for (auto& b : find_bumps(R, config.bumps)) rep.bumps.push_back(std::move(b));
      rep.r_functions.push_back(std::move(R));
    }
  });

  run_stage(rep, "closed_forms", true, blocked, blocked_fail, [&] {
    for (const auto& c : rep.canyons)
      rep.closed_totals.push_back(!c.d.infinite && c.d.value > 1 ? closed_form_total(c) : 0.0);
    rep.milnor = milnor_number(g, rep.polars);
    rep.langevin = langevin_check(g, rep.polars, rep.canyons, rep.lfa);
  });

  run_stage(rep, "integrate", config.integrate, blocked, blocked_fail, [&] {
    for (const auto& c : rep.canyons) {
      if (c.d.infinite || c.d.value <= 1) continue;
      rep.integrations.push_back(canyon_total(g, c, config.schedule));
      rep.integration_canyons.push_back(c.id);
    }
    rep.langevin = langevin_check(g, rep.polars, rep.canyons, rep.lfa, config.schedule);
  });

  run_stage(rep, "dirac", config.dirac, blocked, blocked_fail, [&] {
    for (const auto& r : rep.lfa.roots)
      if (r.mult > 1) rep.dirac.push_back(dirac_profile(g, r.z, rep.canyons, rep.lfa, config.schedule));
  });

  run_stage(rep, "linking", config.linking, blocked, blocked_fail, [&] {
    for (int k = 0; k < config.linking_seeds; ++k) {
      LinkingRun run;
      run.seed = config.seed + static_cast<unsigned long>(k);
      auto [a, b] = build_twin_networks(g, rep.polars, run.seed);
      run.matrix = linking_number(a, b);
      for (std::size_t i = 0; i < a.members.size(); ++i)
        run.row_labels.push_back(a.eps_tag + "[" + std::to_string(i) + "]");
      for (std::size_t i = 0; i < b.members.size(); ++i)
        run.col_labels.push_back(b.eps_tag + "[" + std::to_string(i) + "]");
      rep.linking.push_back(std::move(run));
    }
  });
  return rep;
}

namespace {

json cj(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json series_json(const PuiseuxSeries& s) {
  json terms = json::array();
  for (const auto& t : s.terms()) {
    json term{{"q", to_pq(t.q)}, {"c", cj(t.c)}};
    if (t.exact) term["c_exact"] = t.exact->str();
    terms.push_back(std::move(term));
  }
  return json{{"prefix", s.str()}, {"N", s.N()}, {"terms", std::move(terms)}};
}

json schedule_json(const Schedule& s) {
  return json{{"eta", s.eta},
              {"c0_factor", s.c0_factor},
              {"ratio", s.ratio},
              {"steps", s.steps},
              {"phase", s.phase},
              {"radii", s.radii},
              {"eta_halving", s.eta_halving},
              {"grid",
               {{"chart", chart_name(s.grid)},
                {"per_efold", s.grid.per_efold},
                {"angular", s.grid.angular},
                {"inner_factor", s.grid.inner_factor},
                {"curve_inner", s.grid.curve_inner},
                {"branch_patches",
                 {{"per_efold", s.grid.patch_per_efold},
                  {"angular", s.grid.patch_angular},
                  {"depth", s.grid.patch_depth}}}}}};
}

json integration_json(const IntegrationResult& r) {
  json j{{"value", r.value},
         {"closed_form", r.closed_form},
         {"relative_gap", r.relative_gap},
         {"error_estimate", r.error_estimate},
         {"eta", r.eta},
         {"c_schedule", r.c_schedule},
         {"radii", r.radii},
         {"per_c", r.per_c},
         {"whole_per_c", r.whole_per_c},
         {"limit_curve", r.curve},
         {"limit_curve_whole", r.whole_curve},
         {"captured_fraction", r.captured_fraction},
         {"grid", chart_name(r.grid)}};
  if (r.half_eta_value) j["half_eta_value"] = *r.half_eta_value;
  return j;
}

json stage_json(const StageStatus& s) {
  json j{{"stage", s.stage}, {"requested", s.requested}, {"ok", s.ok}, {"skipped", s.skipped}};
  if (!s.error_kind.empty()) j["error"] = s.error_kind;
  if (!s.message.empty()) j["message"] = s.message;
  return j;
}

}  // namespace

json to_json(const AnalysisReport& rep) {
  json j;
  j["tool"] = {{"name", "analyze"}, {"version", kToolVersion}};
  j["input"] = {{"text", rep.config.input}, {"polynomial", rep.input.str()}};
  j["config"] = {{"seed", rep.config.seed},
                 {"trunc", rep.config.trunc ? json(to_pq(*rep.config.trunc)) : json("adaptive")},
                 {"tol", rep.config.tol},
                 {"integrate", rep.config.integrate},
                 {"dirac", rep.config.dirac},
                 {"linking", rep.config.linking},
                 {"linking_seeds", rep.config.linking_seeds},
                 {"schedule", schedule_json(rep.config.schedule)},
                 {"bump_options",
                  {{"grid", rep.config.bumps.grid},
                   {"grad_tol", rep.config.bumps.grad_tol},
                   {"cluster_dist", rep.config.bumps.cluster_dist},
                   {"ring_radius_tol", rep.config.bumps.ring_radius_tol},
                   {"ring_value_tol", rep.config.bumps.ring_value_tol}}}};
  {
    const auto& U = rep.regularization.U;
    j["mini_regularization"] = {{"identity", rep.regularization.identity},
                                {"unitary", {{U[0].str(), U[1].str()}, {U[2].str(), U[3].str()}}},
                                {"g", rep.regularization.g.str()}};
  }
  j["constant_curvature"] = rep.constant_curvature;
  if (rep.constant_curvature) j["summary"] = "ConstantCurvature";

  json roots = json::array();
  for (const auto& r : rep.lfa.roots) roots.push_back({{"z", cj(r.z)}, {"mult", r.mult}});
  j["leading_form"] = {{"m", rep.lfa.m},
                       {"r", rep.lfa.r},
                       {"degenerate", rep.lfa.degenerate},
                       {"roots", roots}};

  json polars = json::array();
  for (std::size_t i = 0; i < rep.polars.size(); ++i) {
    const auto& p = rep.polars[i];
    json pj{{"index", i},
            {"series", series_json(p.root.series)},
            {"multiplicity", p.root.multiplicity},
            {"class_size", p.root.class_size},
            {"h", p.h.str()},
            {"a", cj(p.a)},
            {"d_gr", p.d_gr.str()}};
    if (p.a_exact) pj["a_exact"] = p.a_exact->str();
    if (p.canyon_id) pj["canyon"] = *p.canyon_id;
    polars.push_back(std::move(pj));
  }
  j["polars"] = std::move(polars);

  json spots = json::array();
  for (const auto& s : rep.spot_checks)
    spots.push_back({{"passed", s.passed},
                     {"attempts", s.attempts},
                     {"u", cj(s.u)},
                     {"slope_at_d", s.slope_at_d},
                     {"expected_at_d", s.expected_at_d},
                     {"slope_below", s.slope_below},
                     {"expected_below", s.expected_below}});
  j["gradient_spot_checks"] = std::move(spots);

  json canyons = json::array();
  for (std::size_t i = 0; i < rep.canyons.size(); ++i) {
    const auto& c = rep.canyons[i];
    json cjn{{"id", c.id},
             {"d", c.d.str()},
             {"representative", series_json(c.representative)},
             {"members", c.members},
             {"m_gr", c.m_gr},
             {"m_branch", c.m_branch},
             {"mu_gr", c.mu_gr.str()},
             {"minimal", c.minimal},
             {"tableland", c.tableland},
             {"tangent", c.tangent ? cj(*c.tangent) : json(nullptr)}};
    if (i < rep.closed_totals.size() && !c.d.infinite && c.d.value > 1) {
      cjn["closed_total"] = rep.closed_totals[i];
      if (!c.mu_gr.infinite) cjn["closed_total_over_2pi"] = to_pq(c.mu_gr.value + c.m_gr);
    }
    canyons.push_back(std::move(cjn));
  }
  j["canyons"] = std::move(canyons);

  json profiles = json::array();
  for (const auto& p : rep.profiles) {
    json bps = json::array();
    for (const auto& [e, L] : p.profile.breakpoints) bps.push_back({to_pq(e), to_pq(L)});
    const auto& m = p.monotonicity;
    profiles.push_back({{"polar", p.polar},
                        {"breakpoints", bps},
                        {"monotonicity",
                         {{"tan_bottom", to_pq(m.tan_bottom)},
                          {"tan_top", to_pq(m.tan_top)},
                          {"d", to_pq(m.d)},
                          {"above_minus_one", m.above_minus_one},
                          {"increasing", m.increasing},
                          {"decreasing", m.decreasing},
                          {"strictly_near_d", m.strictly_near_d},
                          {"value_at_d", m.value_at_d},
                          {"minimum_at_d", m.minimum_at_d},
                          {"all", m.all()}}}});
  }
  j["profiles"] = std::move(profiles);

  json bumps = json::array();
  for (const auto& b : rep.bumps) {
    json locs = json::array();
    for (cplx u : b.locations) locs.push_back(cj(u));
    json bj{{"canyon", b.canyon_id},
            {"locations", locs},
            {"R", b.R_value},
            {"L", to_pq(b.L_value)}};
    if (b.ring) bj["ring"] = {{"center", cj(b.ring->center)}, {"radius", b.ring->radius}};
    bumps.push_back(std::move(bj));
  }
  j["bumps"] = std::move(bumps);

  json closed;
  closed["canyon_totals"] = rep.closed_totals;
  if (rep.milnor) {
    json per = json::array();
    for (const auto& q : rep.milnor->per_polar) per.push_back(to_pq(q));
    closed["milnor"] = {{"mu", rep.milnor->mu},
                        {"per_polar", per},
                        {"resultant_oracle", rep.milnor->oracle ? json(*rep.milnor->oracle)
                                                                : json(nullptr)},
                        {"agrees", rep.milnor->agrees}};
  }
  if (rep.langevin) {
    const auto& L = *rep.langevin;
    closed["decomposition"] = {{"mu_plus_m_minus_1", to_pq(L.lhs)},
                          {"m_r_minus_1_plus_canyons", to_pq(L.rhs)},
                          {"identity", L.identity},
                          {"langevin_total", L.closed_form}};
    if (L.numeric) closed["langevin_numeric"] = integration_json(*L.numeric);
  }
  j["closed_forms"] = std::move(closed);

  json integ = json::array();
  for (std::size_t i = 0; i < rep.integrations.size(); ++i) {
    json ij = integration_json(rep.integrations[i]);
    ij["canyon"] = rep.integration_canyons[i];
    ij["within_tol"] = rep.integrations[i].relative_gap <= rep.config.tol;
    integ.push_back(std::move(ij));
  }
  j["integration"] = std::move(integ);

  json dirac = json::array();
  for (const auto& d : rep.dirac) {
    json per = json::array();
    for (const auto& r : d.canyon_results) per.push_back(integration_json(r));
    dirac.push_back({{"tangent", cj(d.tangent)},
                     {"sector_radii", d.sector_radii},
                     {"sector_totals", d.sector_totals},
                     {"sector_total", d.sector_total},
                     {"sector_c_schedule", d.sector_c_schedule},
                     {"canyons", d.canyon_ids},
                     {"canyon_sum_numeric", d.canyon_sum_numeric},
                     {"canyon_sum_closed", d.canyon_sum_closed},
                     {"sharpened_totals", d.sharpened_totals},
                     {"captured_fraction", d.captured_fraction},
                     {"captured_error", d.captured_error},
                     {"fraction_monotone", d.fraction_monotone},
                     {"relative_gap_sector_canyon", d.relative_gap_sector_canyon},
                     {"relative_gap_sector_closed", d.relative_gap_sector_closed},
                     {"canyon_results", per}});
  }
  j["dirac"] = std::move(dirac);

  json linking = json::array();
  for (const auto& L : rep.linking) {
    json rows = json::array();
    for (const auto& row : L.matrix.entries) {
      json r = json::array();
      for (const auto& e : row) r.push_back(e.str());
      rows.push_back(std::move(r));
    }
    linking.push_back({{"seed", L.seed},
                       {"rows", L.row_labels},
                       {"cols", L.col_labels},
                       {"entries", rows},
                       {"total", L.matrix.total.str()},
                       {"equals_mu", rep.milnor && !L.matrix.total.infinite &&
                                         L.matrix.total.value == Rational(rep.milnor->mu)}});
  }
  j["linking"] = std::move(linking);

  json stages = json::array();
  for (const auto& s : rep.stages) stages.push_back(stage_json(s));
  j["stages"] = std::move(stages);
  return j;
}

std::vector<std::filesystem::path> emit_artifacts(const AnalysisReport& rep,
                                                  const std::filesystem::path& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());
  std::vector<fs::path> written;
  auto open = [&](const fs::path& p) {
    std::ofstream os(p, std::ios::binary);
    if (!os) throw IoError("cannot write " + p.string());
    written.push_back(p);
    return os;
  };
  {
    auto os = open(out_dir / "report.json");
    os << to_json(rep).dump(2) << '\n';
    if (!os) throw IoError("write failed: " + (out_dir / "report.json").string());
  }
  for (const auto& R : rep.r_functions) {
    fs::path p = out_dir / ("landscape_" + std::to_string(R.canyon_id) + ".csv");
    auto os = open(p);
    write_landscape_csv(os, landscape(R, rep.config.bumps.grid));
    if (!os) throw IoError("write failed: " + p.string());
  }
  for (const auto& pp : rep.profiles) {
    fs::path p = out_dir / ("profile_" + std::to_string(pp.polar) + ".csv");
    auto os = open(p);
    os << "e,L,e_exact,L_exact\n";
    for (const auto& [e, L] : pp.profile.breakpoints)
      os << e.get_d() << ',' << L.get_d() << ',' << to_pq(e) << ',' << to_pq(L) << '\n';
    if (!os) throw IoError("write failed: " + p.string());
  }
  return written;
}

}  // namespace canyon
