#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace nrl {

struct RunRecord {
  double epsilon = 0;
  double t = 0;
  double err_u0 = 0;
  double err_ua = 0;
  double residual = 0;
  double kg_energy_drift = 0;
  double nls_mass_drift = 0;
};

inline const char* csv_header = "epsilon,t,err_u0,err_ua,residual,kg_energy_drift,nls_mass_drift";

void write_csv(std::ostream& os, const std::vector<RunRecord>& rows);
std::vector<RunRecord> read_csv(std::istream& is);
void emit_csv(const std::vector<RunRecord>& rows, const std::string& path);

struct Series {
  std::string name;
  std::vector<std::pair<double, double>> points;
};

struct PlotOptions {
  std::string title;
  std::string xlabel = "x";
  std::string ylabel = "y";
  bool log_x = true;
  bool log_y = true;
};

void write_svg_plot(std::ostream& os, const std::vector<Series>& series, const PlotOptions& opt);
void emit_svg_plot(const std::vector<Series>& series, const std::string& path, const PlotOptions& opt);

}  // namespace nrl
