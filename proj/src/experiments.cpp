#include "nrl/harness/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <ostream>
#include <random>
#include <set>

#include "nrl/nrl.hpp"

namespace nrl {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

double relative(double a, double b) { return b != 0 ? std::abs(a - b) / std::abs(b) : std::abs(a - b); }

// profiles at every requested time, integrated once in increasing order
std::map<double, ProfileState<double>> profile_trajectory(const ProfileState<double>& init, const std::set<double>& times, double dt) {
  std::map<double, ProfileState<double>> out;
  ProfileState<double> s = init;
  for (double t : times) {
    advance_profiles_to(s, t, dt);
    out.emplace(t, s);
  }
  return out;
}

}  // namespace

double AlgebraReport::worst() const { return std::max({weak_transparency, second_identity, pi1_identities}); }

AlgebraReport verify_algebra(int samples_per_dim, std::uint64_t seed) {
  AlgebraReport r;
  r.samples_per_dim = samples_per_dim;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  for (int d = 1; d <= 3; ++d)
    for (int k = 0; k < samples_per_dim; ++k) {
      Wavevector<double> xi(d);
      for (int a = 0; a < d; ++a) xi(a) = u(rng);
      for (int p : {-5, -3, -1, 1, 3, 5}) r.weak_transparency = std::max(r.weak_transparency, check_weak_transparency(p, xi));
      r.second_identity = std::max(r.second_identity, check_second_algebraic(xi));
      const std::complex<double> g(u(rng), u(rng)), h(u(rng), u(rng));
      r.pi1_identities = std::max(r.pi1_identities, pi1_identities_defect(g, h, xi));
    }
  return r;
}

std::vector<double> envelope_times(double t, double eps, int samples) {
  if (t == 0) return {0.0};
  std::vector<double> out;
  const double period = 2 * std::numbers::pi * eps * eps;
  for (int j = 0; j < samples; ++j) out.push_back(t + period * j / samples);
  return out;
}

SweepResult run_convergence_sweep(const ExperimentConfig& cfg, const SweepOptions& opt) {
  cfg.validate();
  const auto [phi, psi] = make_initial_data(cfg);
  const double sigma = cfg.s_norm, lambda = cfg.lambda;
  const int K = cfg.ka;

  std::set<double> all;
  for (double eps : cfg.epsilons)
    for (double t : cfg.times)
      for (double tj : envelope_times(t, eps, cfg.envelope_samples)) all.insert(tj);
  auto t0 = Clock::now();
  const ProfileState<double> init = initial_profiles(phi, psi, lambda, K);
  const auto profiles = profile_trajectory(init, all, cfg.profile_dt);
  const double mass0 = nls_mass(init.g(0));
  if (opt.log) *opt.log << "profiles: " << all.size() << " sample times, " << seconds_since(t0) << " s\n";

  SweepResult res;
  for (double eps : cfg.epsilons) {
    t0 = Clock::now();
    std::vector<double> times;
    std::vector<std::vector<double>> groups;
    for (double t : cfg.times) {
      groups.push_back(envelope_times(t, eps, cfg.envelope_samples));
      times.insert(times.end(), groups.back().begin(), groups.back().end());
    }
    ReferenceInfo info;
    std::vector<KGState<double>> ref;
    if (opt.with_reference)
      ref = kg_reference_trajectory(phi, psi, eps, lambda, times, default_kg_dt(eps, cfg.dt_factor), cfg.reference_tol, &info);
    const double e0 = kg_energy(kg_init(phi, psi, eps, lambda));

    std::size_t k = 0;
    for (std::size_t ti = 0; ti < cfg.times.size(); ++ti) {
      RunRecord row;
      row.epsilon = eps;
      row.t = cfg.times[ti];
      for (double tj : groups[ti]) {
        const ProfileState<double>& s = profiles.at(tj);
        const double theta = tj / (eps * eps);
        const KGState<double>* u = opt.with_reference ? &ref[k++] : nullptr;
        if (u) {
          row.err_u0 = std::max(row.err_u0, sobolev_norm(Field<double>(u->u - leading_order_u(s.g(0), theta)), sigma));
          row.kg_energy_drift = std::max(row.kg_energy_drift, relative(kg_energy(*u), e0));
        }
        if ((u && opt.with_ua) || opt.with_residual) {
          WKBExpansion<double> e(s, eps);
          if (u && opt.with_ua)
            row.err_ua = std::max(row.err_ua, sobolev_norm(Field<double>(u->u - assemble_u(e.cascade(), eps, theta, K + 2)), sigma));
          if (opt.with_residual) {
            SystemVector<double> r = residual_formula(e);
            row.residual = std::max(row.residual, std::pow(eps, K + 1) * sobolev_norm(r, sigma));
          }
        }
        row.nls_mass_drift = std::max(row.nls_mass_drift, relative(nls_mass(s.g(0)), mass0));
      }
      res.rows.push_back(row);
    }
    res.epsilons.push_back(eps);
    res.reference.push_back(info);
    if (opt.log && opt.with_reference)
      *opt.log << "eps = " << eps << ": reference levels " << info.levels << " (last difference " << info.final_difference << "), "
               << seconds_since(t0) << " s\n";
  }
  return res;
}

std::vector<double> modulation_error_u0(const ExperimentConfig& cfg, double t) {
  cfg.validate();
  const auto [phi, psi] = make_initial_data(cfg);
  ProfileState<double> s = initial_profiles(phi, psi, cfg.lambda, 0);
  advance_profiles_to(s, t, cfg.profile_dt);
  std::vector<double> out;
  for (double eps : cfg.epsilons) {
    const auto ref = kg_reference_solve(phi, psi, eps, cfg.lambda, t, cfg.reference_tol);
    const std::complex<double> rot = std::polar(1.0, t / (eps * eps));
    out.push_back(2 * sobolev_norm(Field<double>(positive_frequency_part(ref) - s.g(0) * rot), cfg.s_norm));
  }
  return out;
}

RateFit fit_column(const std::vector<RunRecord>& rows, double t, const std::string& column) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& r : rows) {
    if (r.t != t) continue;
    double v;
    if (column == "err_u0") v = r.err_u0;
    else if (column == "err_ua") v = r.err_ua;
    else if (column == "residual") v = r.residual;
    else throw DomainError("fit_column: unknown column '" + column + "'");
    pts.emplace_back(r.epsilon, v);
  }
  return fit_rate(pts);
}

GrowthResult run_growth(const ExperimentConfig& cfg, std::ostream* log) {
  ExperimentConfig c = cfg;
  c.epsilons = {cfg.epsilons.front()};
  GrowthResult g;
  g.epsilon = c.epsilons.front();
  g.sweep = run_convergence_sweep(c, {false, false, log});
  std::vector<std::pair<double, double>> pts;
  const double e2 = g.epsilon * g.epsilon;
  for (const auto& r : g.sweep.rows) {
    pts.emplace_back(r.t, r.err_u0 / e2);
    g.ratio.push_back(r.err_u0 / ((1 + r.t) * e2));
  }
  g.fit = fit_time_growth(pts);
  return g;
}

std::vector<InitialRow> initial_perturbation_study(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto [phi, psi] = make_initial_data(cfg);
  const ProfileState<double> s = initial_profiles(phi, psi, cfg.lambda, cfg.ka);
  std::vector<InitialRow> out;
  for (double eps : cfg.epsilons) {
    WKBExpansion<double> e(s, eps);
    const auto exact = hyperbolic_lift(kg_init(phi, psi, eps, cfg.lambda));
    const auto ip = initial_perturbation(e, exact, cfg.s_norm);
    out.push_back({eps, ip.total, ip.per_order});
  }
  return out;
}

std::vector<ResidualCheck> residual_fd_study(const ExperimentConfig& cfg, std::ostream* log) {
  using L = long double;
  cfg.validate();
  const auto [phi, psi] = make_initial_data(cfg);
  double t = 0;
  for (double tc : cfg.times)
    if (tc > 0) {
      t = tc;
      break;
    }
  ProfileState<double> sd = initial_profiles(phi, psi, cfg.lambda, cfg.ka);
  advance_profiles_to(sd, t, cfg.profile_dt);
  const ProfileState<L> s = sd.cast<L>();
  std::vector<ResidualCheck> out;
  for (double eps : cfg.epsilons) {
    auto t0 = Clock::now();
    WKBExpansion<L> e(s, L(eps));
    SystemVector<L> r = residual_formula(e);
    r *= std::pow(L(eps), L(cfg.ka + 1));
    const SystemVector<L> fd = residual_fd(s, L(eps), L(1e-6) * L(eps) * L(eps));
    ResidualCheck c;
    c.epsilon = eps;
    c.t = t;
    c.formula_norm = double(sobolev_norm(r, L(1)));
    c.difference = double(sobolev_norm(SystemVector<L>(r - fd), L(1)));
    out.push_back(c);
    if (log) *log << "eps = " << eps << ": |formula - difference| = " << c.difference << " (" << seconds_since(t0) << " s)\n";
  }
  return out;
}

std::vector<std::string> write_snapshots(const ExperimentConfig& cfg, const std::string& dir) {
  cfg.validate();
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + dir + "': " + ec.message());
  const auto [phi, psi] = make_initial_data(cfg);
  const double eps = cfg.epsilons.front();
  std::vector<std::string> paths;

  const KGState<double> k = kg_init(phi, psi, eps, cfg.lambda);
  const std::string init_path = dir + "/initial.nrlf";
  write_snapshot_file(init_path, {k.u, k.ut});
  paths.push_back(init_path);

  const ProfileState<double> s = initial_profiles(phi, psi, cfg.lambda, cfg.ka);
  WKBExpansion<double> e(s, eps);
  e.build();
  const std::string index_path = dir + "/wkb_index.csv";
  std::ofstream index(index_path);
  if (!index) throw IoError("cannot write '" + index_path + "'");
  index << "n,p,file,h1_norm\n";
  for (const auto& [key, a] : e.table()) {
    const auto [n, p] = key;
    const std::string name = "wkb_n" + std::to_string(n) + "_p" + (p < 0 ? "m" + std::to_string(-p) : std::to_string(p)) + ".nrlf";
    std::vector<Field<double>> comps;
    for (int i = 0; i < a.value.components(); ++i) comps.push_back(a.value.component(i));
    write_snapshot_file(dir + "/" + name, comps);
    paths.push_back(dir + "/" + name);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", sobolev_norm(a.value, 1.0));
    index << n << ',' << p << ',' << name << ',' << buf << '\n';
  }
  paths.push_back(index_path);
  return paths;
}

void plot_sweep(const SweepResult& r, const std::string& path, int ka) {
  std::vector<Series> series;
  std::vector<double> ts;
  for (const auto& row : r.rows)
    if (std::find(ts.begin(), ts.end(), row.t) == ts.end()) ts.push_back(row.t);
  auto label = [](const char* what, double t) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s t=%g", what, t);
    return std::string(buf);
  };
  for (double t : ts) {
    Series a{label("u0", t), {}}, b{label("ua", t), {}};
    for (const auto& row : r.rows)
      if (row.t == t) {
        a.points.emplace_back(row.epsilon, row.err_u0);
        b.points.emplace_back(row.epsilon, row.err_ua);
      }
    series.push_back(a);
    if (ka >= 0) series.push_back(b);
  }
  emit_svg_plot(series, path, {"KG error against approximations", "epsilon", "H^s error", true, true});
}

double estimate_sweep_seconds(const ExperimentConfig& cfg) {
  const auto [phi, psi] = make_initial_data(cfg);
  const double eps = cfg.epsilons.front();
  KGState<double> s = kg_init(phi, psi, eps, cfg.lambda);
  KGStepper<double> st(cfg.grid(), eps, cfg.lambda, 1e-4);
  auto t0 = Clock::now();
  st.advance(s, 20);
  const double per_kg = seconds_since(t0) / 20;

  ProfileState<double> p = initial_profiles(phi, psi, cfg.lambda, cfg.ka);
  t0 = Clock::now();
  for (int i = 0; i < 3; ++i) advance_profiles(p, cfg.profile_dt);
  const double per_profile = seconds_since(t0) / 3;

  const double t_max = cfg.times.back();
  double kg_steps = 0;
  for (double e : cfg.epsilons) kg_steps += (t_max + 2 * std::numbers::pi * e * e) / default_kg_dt(e, cfg.dt_factor);
  // about five refinement levels: 1 + 2 + ... + 32
  return kg_steps * 63 * per_kg + (t_max / cfg.profile_dt) * per_profile;
}

}  // namespace nrl
