#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "nrl/spectral/field.hpp"

namespace nrl {

// Initial data generators. phi and psi share a shape; psi is scaled by psi_amplitude.
//   gaussian-bump:       amplitude * exp(-|x - L/2|^2 / (2 width^2))
//   single-mode:         amplitude * cos(2 pi mode x_0 / L)
//   random-band-limited: random modes |k_a| <= band, peak |phi| = amplitude
struct InitialDataSpec {
  std::string kind = "gaussian-bump";
  double amplitude = 1.0;
  double psi_amplitude = 0.5;
  double width = 1.0;
  int mode = 1;
  int band = 6;
  std::uint64_t seed = 1;
};

struct ExperimentConfig {
  int dim = 1;
  int n = 256;
  double length = 16 * 3.14159265358979323846;
  int dealias_pad = 2;
  double lambda = 1.0;
  int ka = 2;
  std::vector<double> epsilons{0.4, 0.2, 0.1, 0.05};
  std::vector<double> times{1.0};
  double s_norm = 1.0;
  double dt_factor = 1.0 / 20;
  InitialDataSpec data;
  std::string output_dir = "out";
  double reference_tol = 1e-9;
  // errors at t are the max over this many samples of [t, t + 2 pi eps^2)
  int envelope_samples = 24;
  double profile_dt = 2.5e-4;

  GridSpec grid() const;
  void validate() const;  // throws ConfigError
};

// Grammar: one `key = value` per line, `#` starts a comment, blank lines ignored.
// Lists are comma separated. Reals accept a trailing `pi` factor (`16pi`, `16*pi`, `pi`).
ExperimentConfig parse_config(std::istream& in, const std::string& source = "<config>");
ExperimentConfig load_config(const std::string& path);
std::string format_config(const ExperimentConfig& cfg);

// (phi, psi), both real
std::pair<Field<double>, Field<double>> make_initial_data(const ExperimentConfig& cfg);

}  // namespace nrl
