// nrl: command-line front end for the Klein-Gordon / WKB experiments.
#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include "nrl/errors.hpp"
#include "nrl/harness/experiments.hpp"

using namespace nrl;

namespace {

struct Common {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  bool quiet = false;
};

ExperimentConfig load(const Common& c) {
  if (c.config.empty()) throw ConfigError("--config PATH is required");
  ExperimentConfig cfg = load_config(c.config);
  if (const char* env = std::getenv("NRL_OUT"); env && *env) cfg.output_dir = env;
  if (!c.out.empty()) cfg.output_dir = c.out;
  if (c.seed) cfg.data.seed = *c.seed;
  cfg.validate();
  return cfg;
}

void announce(const ExperimentConfig& cfg, const Common& c) {
  if (c.quiet) return;
  std::cerr << "estimated run time: " << std::lround(estimate_sweep_seconds(cfg)) << " s\n";
}

void print_fit(const char* what, const RateFit& f) {
  std::cout << what << ": slope " << f.slope << ", R^2 " << f.r_squared << "\n";
}

int cmd_verify_algebra(const Common& c) {
  const auto r = verify_algebra(100, c.seed.value_or(1));
  std::cout << "samples per dim: " << r.samples_per_dim << "\n"
            << "weak transparency  max |Pi_p A Pi_p|: " << r.weak_transparency << "\n"
            << "second identity    max residual:      " << r.second_identity << "\n"
            << "Pi_1 identities    max residual:      " << r.pi1_identities << "\n";
  return r.worst() <= 1e-13 ? 0 : 2;
}

int cmd_sweep(const Common& c) {
  const ExperimentConfig cfg = load(c);
  announce(cfg, c);
  const auto r = run_convergence_sweep(cfg, {true, true, c.quiet ? nullptr : &std::cerr});
  emit_csv(r.rows, cfg.output_dir + "/sweep.csv");
  plot_sweep(r, cfg.output_dir + "/sweep.svg", cfg.ka);
  write_csv(std::cout, r.rows);
  bool ok = true;
  if (cfg.epsilons.size() >= 3)
    for (double t : cfg.times) {
      if (t == 0) continue;
      const RateFit u0 = fit_column(r.rows, t, "err_u0"), ua = fit_column(r.rows, t, "err_ua");
      std::cout << "t = " << t << "\n";
      print_fit("  err_u0", u0);
      print_fit("  err_ua", ua);
      ok = ok && u0.slope >= 1.8 && u0.slope <= 2.2;
      if (cfg.ka >= 2) ok = ok && ua.slope >= cfg.ka + 0.7;
    }
  std::cout << "wrote " << cfg.output_dir << "/sweep.csv and sweep.svg\n";
  return ok ? 0 : 2;
}

int cmd_growth(const Common& c) {
  const ExperimentConfig cfg = load(c);
  announce(cfg, c);
  const auto g = run_growth(cfg, c.quiet ? nullptr : &std::cerr);
  emit_csv(g.sweep.rows, cfg.output_dir + "/growth.csv");
  Series s{"err_u0 / eps^2", {}};
  for (const auto& r : g.sweep.rows) s.points.emplace_back(1 + r.t, r.err_u0 / (g.epsilon * g.epsilon));
  emit_svg_plot({s}, cfg.output_dir + "/growth.svg", {"growth in time", "1 + t", "error / eps^2", false, false});
  write_csv(std::cout, g.sweep.rows);
  print_fit("err_u0/eps^2 vs 1+t", g.fit);
  double lo = INFINITY, hi = 0;
  for (double q : g.ratio) lo = std::min(lo, q / g.ratio.front()), hi = std::max(hi, q / g.ratio.front());
  std::cout << "ratio to t = " << g.sweep.rows.front().t << " value in [" << lo << ", " << hi << "]\n";
  return g.fit.r_squared >= 0.8 && hi <= 3 && lo >= 1.0 / 3 ? 0 : 2;
}

int cmd_residual(const Common& c) {
  const ExperimentConfig cfg = load(c);
  announce(cfg, c);
  const auto r = run_convergence_sweep(cfg, {false, true, c.quiet ? nullptr : &std::cerr, false});
  emit_csv(r.rows, cfg.output_dir + "/residual.csv");
  const auto checks = residual_fd_study(cfg, c.quiet ? nullptr : &std::cerr);
  std::ofstream fd(cfg.output_dir + "/residual_fd.csv");
  fd << "epsilon,t,formula_norm,difference\n";
  bool ok = true;
  for (const auto& k : checks) {
    fd << k.epsilon << ',' << k.t << ',' << k.formula_norm << ',' << k.difference << '\n';
    ok = ok && k.difference <= 1e-8;
  }
  const double target = std::ldexp(1.0, cfg.ka + 1);
  for (std::size_t i = 1; i < r.rows.size(); ++i) {
    const auto &a = r.rows[i - 1], &b = r.rows[i];
    if (a.t != b.t || a.t == 0) continue;
    const double q = a.residual / b.residual;
    std::cout << "t = " << a.t << ", eps " << a.epsilon << " -> " << b.epsilon << ": residual ratio " << q << "\n";
    ok = ok && q >= 0.75 * target && q <= 1.25 * target;
  }
  for (const auto& k : checks) std::cout << "eps = " << k.epsilon << ": formula vs difference " << k.difference << "\n";
  return ok ? 0 : 2;
}

int cmd_snapshot(const Common& c) {
  const ExperimentConfig cfg = load(c);
  for (const auto& p : write_snapshots(cfg, cfg.output_dir)) std::cout << p << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Klein-Gordon nonrelativistic-limit laboratory"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--config", common.config, "configuration file (key = value)");
  app.add_option("--out", common.out, "output directory (overrides config and NRL_OUT)");
  app.add_option("--seed", common.seed, "seed for random initial data");
  app.add_flag("--quiet", common.quiet, "suppress progress output");
  app.fallthrough();

  int (*run)(const Common&) = nullptr;
  app.add_subcommand("verify-algebra", "check the symbol identities")->callback([&] { run = cmd_verify_algebra; });
  app.add_subcommand("sweep", "epsilon sweep: errors against u_0 and u_a")->callback([&] { run = cmd_sweep; });
  app.add_subcommand("growth", "error growth in time at one epsilon")->callback([&] { run = cmd_growth; });
  app.add_subcommand("residual", "WKB residual rates and the finite-difference check")->callback([&] { run = cmd_residual; });
  app.add_subcommand("snapshot", "write initial data and the WKB table as binary snapshots")->callback([&] { run = cmd_snapshot; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return 1;
  }
  try {
    return run(common);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
