// analyze: polar, canyon and curvature report for a plane curve singularity.

#include "canyon/errors.hpp"
#include "canyon/report.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

enum Exit { kOk = 0, kInputError = 1, kStageFailure = 2 };

// A readable file is taken as input text; '#' starts a comment line.
bool read_input(const std::string& arg, std::string& text) {
  std::ifstream in(arg);
  if (!in) {
    text = arg;
    return true;
  }
  std::ostringstream body;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    body << line << ' ';
  }
  text = body.str();
  return text.find_first_not_of(" \t\r") != std::string::npos;
}

std::string fmt(double x, int prec = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", prec, x);
  return buf;
}

std::string fmt(canyon::cplx z) {
  if (z.imag() == 0) return fmt(z.real());
  return "(" + fmt(z.real()) + (z.imag() < 0 ? "-" : "+") + fmt(std::fabs(z.imag())) + "i)";
}

void print_summary(const canyon::AnalysisReport& rep, std::ostream& os) {
  using canyon::to_pq;
  os << "f = " << rep.input.str() << '\n';
  if (!rep.regularization.identity) os << "mini-regularized: g = " << rep.regularization.g.str() << '\n';
  os << "m = " << rep.lfa.m << ", r = " << rep.lfa.r
     << (rep.lfa.degenerate ? ", degenerate leading form" : "") << '\n';
  if (rep.constant_curvature) {
    os << "ConstantCurvature: f = unit * (z - zeta(w))^m, curvature is constant on each level set\n";
    return;
  }
  os << "polars:\n";
  for (std::size_t i = 0; i < rep.polars.size(); ++i) {
    const auto& p = rep.polars[i];
    os << "  [" << i << "] " << p.root.series.str() << "  mult " << p.root.multiplicity << "  h "
       << p.h.str() << "  d_gr " << p.d_gr.str() << '\n';
  }
  os << "canyons:\n";
  for (std::size_t i = 0; i < rep.canyons.size(); ++i) {
    const auto& c = rep.canyons[i];
    os << "  #" << c.id << "  d " << c.d.str() << "  m_gr " << c.m_gr << "  mu_gr " << c.mu_gr.str()
       << (c.minimal ? "  minimal" : "") << (c.tangent ? "  tangent [" + fmt(*c.tangent) + ":1]" : "");
    if (i < rep.closed_totals.size() && rep.closed_totals[i] > 0)
      os << "  total 2pi*" << to_pq(c.mu_gr.value + c.m_gr) << " = " << fmt(rep.closed_totals[i]);
    os << '\n';
  }
  if (!rep.bumps.empty()) os << "bumps:\n";
  for (const auto& b : rep.bumps) {
    os << "  canyon #" << b.canyon_id << "  R = " << fmt(b.R_value, 9) << "  L = " << to_pq(b.L_value);
    if (b.ring)
      os << "  ring radius " << fmt(b.ring->radius, 8) << " about " << fmt(b.ring->center);
    else
      for (auto u : b.locations) os << "  u = " << fmt(u);
    os << '\n';
  }
  if (rep.milnor) os << "mu = " << rep.milnor->mu << (rep.milnor->oracle ? " (resultant oracle agrees)" : "");
  if (rep.milnor && rep.milnor->oracle && !rep.milnor->agrees) os << " MISMATCH";
  if (rep.milnor) os << '\n';
  if (rep.langevin)
    os << "decomposition: " << to_pq(rep.langevin->lhs) << " = " << to_pq(rep.langevin->rhs)
       << (rep.langevin->identity ? "" : "  FAILED") << ", total curvature " << fmt(rep.langevin->closed_form)
       << '\n';
  for (std::size_t i = 0; i < rep.integrations.size(); ++i) {
    const auto& r = rep.integrations[i];
    os << "integral canyon #" << rep.integration_canyons[i] << ": " << fmt(r.value) << " vs "
       << fmt(r.closed_form) << " (gap " << fmt(r.relative_gap, 3) << ")\n";
  }
  if (rep.langevin && rep.langevin->numeric)
    os << "integral whole ball: " << fmt(rep.langevin->numeric->value) << " vs "
       << fmt(rep.langevin->closed_form) << '\n';
  for (const auto& d : rep.dirac)
    os << "dirac [" << fmt(d.tangent) << ":1]: sector " << fmt(d.sector_total) << ", canyons "
       << fmt(d.canyon_sum_numeric) << ", captured "
       << (d.captured_fraction.empty() ? std::string("-") : fmt(d.captured_fraction.back(), 4))
       << (d.fraction_monotone ? " (monotone)" : " (not monotone)") << '\n';
  for (const auto& L : rep.linking)
    os << "linking seed " << L.seed << ": total " << L.matrix.total.str() << '\n';
  for (const auto& s : rep.stages)
    if (s.requested && !s.ok)
      os << "stage " << s.stage << " failed: " << s.error_kind << ": " << s.message << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polar, canyon and curvature analysis of a plane curve singularity f(z, w)"};
  std::string input, trunc, out_dir;
  canyon::PipelineConfig cfg;
  bool as_json = false;
  app.add_option("input", input, "polynomial in z, w (or a file containing one)")->required();
  app.add_option("--trunc", trunc, "polar truncation order as p/q (default: adaptive)");
  app.add_option("--seed", cfg.seed, "seed for regularization, spot checks and networks")
      ->capture_default_str();
  app.add_option("--tol", cfg.tol, "relative tolerance for numeric vs closed form")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_flag("--integrate", cfg.integrate, "level-set quadrature of canyon totals (slow)");
  app.add_flag("--dirac", cfg.dirac, "Dirac profile around degenerate directions (slow)");
  app.add_flag("--linking", cfg.linking, "twin-network linking matrices");
  app.add_option("--out", out_dir, "write report.json and CSV artifacts to this directory");
  app.add_flag("--json", as_json, "print the JSON report on stdout");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kInputError;
  }

  if (!read_input(input, cfg.input)) {
    std::cerr << "analyze: empty input file " << input << '\n';
    return kInputError;
  }
  if (!trunc.empty()) {
    try {
      cfg.trunc = canyon::rational_from_string(trunc);
    } catch (const std::exception&) {
      std::cerr << "analyze: --trunc expects a rational p/q, got '" << trunc << "'\n";
      return kInputError;
    }
    if (*cfg.trunc <= 0) {
      std::cerr << "analyze: --trunc must be positive\n";
      return kInputError;
    }
  }

  canyon::AnalysisReport rep;
  try {
    rep = canyon::run_pipeline(cfg);
  } catch (const canyon::ParseError& e) {
    std::cerr << "analyze: " << e.what() << '\n';
    return kInputError;
  }

  int rc = rep.failed() ? kStageFailure : kOk;
  if (!out_dir.empty()) {
    try {
      canyon::emit_artifacts(rep, out_dir);
    } catch (const canyon::Error& e) {
      std::cerr << "analyze: " << e.what() << '\n';
      rc = kStageFailure;
    }
  }
  if (as_json)
    std::cout << canyon::to_json(rep).dump(2) << '\n';
  else
    print_summary(rep, std::cout);
  return rc;
}
