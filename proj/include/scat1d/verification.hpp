#pragma once

// The acceptance checks: closed-form reproduction, unitarity, coefficient
// bounds, kernel-oracle equivalence, wave-operator identities, decay and
// dynamics properties.  Shared by the acceptance test binary and the CLI
// verify-all command.

#include <string>
#include <vector>

namespace scat1d {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;   // worst values vs thresholds
  double seconds = 0.0;
};

struct VerifyOptions {
  unsigned seed = 20260801;

  // criterion 1-3: scattering grids
  std::size_t n_kgrid = 2048;
  double tol_single_closed_form = 1e-12;
  double tol_double_closed_form = 1e-10;
  std::size_t n_random_configs = 100;
  double tol_unitarity = 1e-10;
  double window_growth_slack = 0.05;

  // criterion 4-5: kernel grids
  double kernel_dx = 0.005;
  double kernel_kmax = 96.0;
  std::size_t kernel_nk = 768;
  double tol_b1_vs_kn = 1e-5;
  double line_margin = 0.1;
  double refine_stability = 0.10;

  // criterion 6-8, 10: wave-operator grids
  double w_xmax = 120.0;
  double w_dx = 0.05;
  double w_kmax = 8.0;
  std::size_t family_size = 50;
  double tol_w_identities = 1e-5;
  double tol_intertwining = 1e-5;
  double sobolev_family_slack = 0.05;

  // criterion 9, 11: dynamics
  double tol_mass_drift = 1e-8;
  double dt_ratio_slack = 0.5;
  double beat_period_slack = 0.02;
  double slope_lo = -0.55;
  double slope_hi = -0.45;

  // criterion 12: determinism (needs the CLI binary; empty disables)
  std::string cli_path;

  // reduced grids for a fast smoke run (tolerance checks may then fail;
  // used by the determinism comparison)
  bool quick = false;

  // when nonempty, write plot-ready CSV artifacts here
  std::string out_dir;
};

std::vector<CriterionResult> run_acceptance(const VerifyOptions& opts);

// pretty one-line-per-criterion report; returns true when all passed
bool print_report(const std::vector<CriterionResult>& results);

}  // namespace scat1d
