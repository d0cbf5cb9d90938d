#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "nrl/harness/config.hpp"
#include "nrl/harness/fit.hpp"
#include "nrl/harness/output.hpp"
#include "nrl/kg/kg.hpp"

namespace nrl {

// ---- algebra ----
struct AlgebraReport {
  int samples_per_dim = 0;
  double weak_transparency = 0;  // max |Pi_p A Pi_p|, p in {+-1, +-3, +-5}
  double second_identity = 0;    // max |Pi_1 A L_1^{-1} A Pi_1 - (i/2)|xi|^2 Pi_1|
  double pi1_identities = 0;     // max over both L_1^{-1} identities
  double worst() const;
};
AlgebraReport verify_algebra(int samples_per_dim = 100, std::uint64_t seed = 1);

// ---- convergence sweep ----
struct SweepOptions {
  bool with_ua = true;
  bool with_residual = true;
  std::ostream* log = nullptr;
  // false: profiles only (residual and mass columns); error and energy columns stay 0
  bool with_reference = true;
};

struct SweepResult {
  std::vector<RunRecord> rows;  // config order of eps, then increasing t
  std::vector<double> epsilons;
  std::vector<ReferenceInfo> reference;  // per eps
};

// Sample times behind the row for checkpoint t: t itself when t = 0, otherwise
// t + j 2 pi eps^2 / M for j < M (one fast period).
std::vector<double> envelope_times(double t, double eps, int samples);

SweepResult run_convergence_sweep(const ExperimentConfig& cfg, const SweepOptions& opt = {});

// slope of column vs eps at checkpoint t; column in {"err_u0", "err_ua", "residual"}
// Fast-phase envelope of ||u - u_0|| at time t, one value per eps:
//   2 ||u_+ - e^{i t/eps^2} g_0||,  u_+ the positive-frequency part of the KG solution.
// Pointwise in t, so it needs no averaging window.
std::vector<double> modulation_error_u0(const ExperimentConfig& cfg, double t);

RateFit fit_column(const std::vector<RunRecord>& rows, double t, const std::string& column);

// ---- growth in time ----
struct GrowthResult {
  SweepResult sweep;
  double epsilon = 0;
  RateFit fit;              // err_u0 / eps^2 against 1 + t
  std::vector<double> ratio;  // err_u0 / ((1 + t) eps^2) per checkpoint
};
GrowthResult run_growth(const ExperimentConfig& cfg, std::ostream* log = nullptr);

// ---- initial perturbation and residual identities ----
struct InitialRow {
  double epsilon = 0;
  double total = 0;               // ||U(0) - U_a(0)||_{H^sigma}
  std::vector<double> per_order;  // ||U_n(0)||, n = 0..K_a+2
};
std::vector<InitialRow> initial_perturbation_study(const ExperimentConfig& cfg);

struct ResidualCheck {
  double epsilon = 0;
  double t = 0;
  double formula_norm = 0;  // ||eps^{K+1} R||_{H^1}
  double difference = 0;    // ||eps^{K+1} R - centered difference||_{H^1}
};
// long double evaluation at the first nonzero checkpoint, step h = 1e-6 eps^2
std::vector<ResidualCheck> residual_fd_study(const ExperimentConfig& cfg, std::ostream* log = nullptr);

// ---- snapshots and plots ----
// initial (u, dt u), then one record per WKB amplitude at t = 0 for the first eps
// plus wkb_index.csv; returns written paths
std::vector<std::string> write_snapshots(const ExperimentConfig& cfg, const std::string& dir);

void plot_sweep(const SweepResult& r, const std::string& path, int ka);

double estimate_sweep_seconds(const ExperimentConfig& cfg);

}  // namespace nrl
