#include "nrl/harness/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "nrl/errors.hpp"
#include "nrl/spectral/ops.hpp"

namespace nrl {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Ctx {
  std::string source;
  int line;
  std::string key;
  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError(source + ":" + std::to_string(line) + ": " + key + ": " + what);
  }
};

double parse_real(const std::string& text, const Ctx& ctx) {
  std::string s = trim(text);
  double factor = 1.0;
  if (s.size() >= 2 && s.compare(s.size() - 2, 2, "pi") == 0) {
    factor = std::numbers::pi;
    s = trim(s.substr(0, s.size() - 2));
    if (!s.empty() && s.back() == '*') s = trim(s.substr(0, s.size() - 1));
    if (s.empty()) return factor;
  }
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) ctx.fail("not a number: '" + text + "'");
  return v * factor;
}

long long parse_int(const std::string& text, const Ctx& ctx) {
  const std::string s = trim(text);
  long long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) ctx.fail("not an integer: '" + text + "'");
  return v;
}

std::vector<double> parse_list(const std::string& text, const Ctx& ctx) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_real(item, ctx));
  if (out.empty()) ctx.fail("empty list");
  return out;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

GridSpec ExperimentConfig::grid() const {
  GridSpec g;
  g.dim = dim;
  g.n = n;
  g.length = length;
  g.dealias_pad = dealias_pad;
  return g;
}

void ExperimentConfig::validate() const {
  try {
    grid().validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  if (ka < 0 || ka % 2 != 0) throw ConfigError("ka must be even and >= 0");
  if (ka > 4) throw ConfigError("ka > 4 is not supported by the harness");
  if (epsilons.empty()) throw ConfigError("epsilons must not be empty");
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    if (!(epsilons[i] > 0 && epsilons[i] < 1)) throw ConfigError("every epsilon must lie in (0, 1)");
    if (i > 0 && !(epsilons[i] < epsilons[i - 1])) throw ConfigError("epsilons must be strictly decreasing");
  }
  if (times.empty()) throw ConfigError("times must not be empty");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] >= 0)) throw ConfigError("times must be >= 0");
    if (i > 0 && !(times[i] > times[i - 1])) throw ConfigError("times must be strictly increasing");
  }
  if (!(s_norm >= 0)) throw ConfigError("s_norm must be >= 0");
  if (!(dt_factor > 0)) throw ConfigError("dt_factor must be positive");
  if (!(reference_tol > 0)) throw ConfigError("reference_tol must be positive");
  if (envelope_samples < 1) throw ConfigError("envelope_samples must be >= 1");
  if (!(profile_dt > 0)) throw ConfigError("profile_dt must be positive");
  if (data.kind != "gaussian-bump" && data.kind != "single-mode" && data.kind != "random-band-limited")
    throw ConfigError("unknown initial data '" + data.kind + "'");
  if (!(data.width > 0)) throw ConfigError("data.width must be positive");
  if (data.band < 0) throw ConfigError("data.band must be >= 0");
  if (output_dir.empty()) throw ConfigError("output_dir must not be empty");
}

ExperimentConfig parse_config(std::istream& in, const std::string& source) {
  ExperimentConfig cfg;
  std::map<std::string, int> seen;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string text = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ConfigError(source + ":" + std::to_string(line) + ": expected key = value");
    const std::string key = trim(text.substr(0, eq));
    const std::string val = trim(text.substr(eq + 1));
    Ctx ctx{source, line, key};
    if (key.empty()) ctx.fail("missing key");
    if (val.empty()) ctx.fail("missing value");
    if (seen.count(key)) ctx.fail("duplicate key (first on line " + std::to_string(seen[key]) + ")");
    seen[key] = line;

    if (key == "dim") cfg.dim = int(parse_int(val, ctx));
    else if (key == "n") cfg.n = int(parse_int(val, ctx));
    else if (key == "length") cfg.length = parse_real(val, ctx);
    else if (key == "dealias_pad") cfg.dealias_pad = int(parse_int(val, ctx));
    else if (key == "lambda") cfg.lambda = parse_real(val, ctx);
    else if (key == "ka") cfg.ka = int(parse_int(val, ctx));
    else if (key == "epsilons") cfg.epsilons = parse_list(val, ctx);
    else if (key == "times") cfg.times = parse_list(val, ctx);
    else if (key == "s_norm") cfg.s_norm = parse_real(val, ctx);
    else if (key == "dt_factor") cfg.dt_factor = parse_real(val, ctx);
    else if (key == "reference_tol") cfg.reference_tol = parse_real(val, ctx);
    else if (key == "envelope_samples") cfg.envelope_samples = int(parse_int(val, ctx));
    else if (key == "profile_dt") cfg.profile_dt = parse_real(val, ctx);
    else if (key == "output_dir") cfg.output_dir = val;
    else if (key == "data") cfg.data.kind = val;
    else if (key == "data.amplitude") cfg.data.amplitude = parse_real(val, ctx);
    else if (key == "data.psi_amplitude") cfg.data.psi_amplitude = parse_real(val, ctx);
    else if (key == "data.width") cfg.data.width = parse_real(val, ctx);
    else if (key == "data.mode") cfg.data.mode = int(parse_int(val, ctx));
    else if (key == "data.band") cfg.data.band = int(parse_int(val, ctx));
    else if (key == "seed") {
      long long s = parse_int(val, ctx);
      if (s < 0) ctx.fail("seed must be >= 0");
      cfg.data.seed = static_cast<std::uint64_t>(s);
    } else ctx.fail("unknown key");
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(in, path);
}

std::string format_config(const ExperimentConfig& c) {
  std::ostringstream os;
  auto list = [](const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt(v[i]);
    return s;
  };
  os << "dim = " << c.dim << "\nn = " << c.n << "\nlength = " << fmt(c.length) << "\ndealias_pad = " << c.dealias_pad
     << "\nlambda = " << fmt(c.lambda) << "\nka = " << c.ka << "\nepsilons = " << list(c.epsilons)
     << "\ntimes = " << list(c.times) << "\ns_norm = " << fmt(c.s_norm) << "\ndt_factor = " << fmt(c.dt_factor)
     << "\nreference_tol = " << fmt(c.reference_tol) << "\nenvelope_samples = " << c.envelope_samples
     << "\nprofile_dt = " << fmt(c.profile_dt) << "\noutput_dir = " << c.output_dir << "\ndata = " << c.data.kind
     << "\ndata.amplitude = " << fmt(c.data.amplitude) << "\ndata.psi_amplitude = " << fmt(c.data.psi_amplitude)
     << "\ndata.width = " << fmt(c.data.width) << "\ndata.mode = " << c.data.mode << "\ndata.band = " << c.data.band
     << "\nseed = " << c.data.seed << "\n";
  return os.str();
}

std::pair<Field<double>, Field<double>> make_initial_data(const ExperimentConfig& cfg) {
  cfg.validate();
  const GridSpec g = cfg.grid();
  const auto& d = cfg.data;
  if (d.kind == "gaussian-bump") {
    auto shape = [&](double a) {
      return sample<double>(g, [&](const std::array<double, 3>& x) {
        double r2 = 0;
        for (int k = 0; k < g.dim; ++k) r2 += (x[k] - g.length / 2) * (x[k] - g.length / 2);
        return a * std::exp(-r2 / (2 * d.width * d.width));
      });
    };
    return {shape(d.amplitude), shape(d.psi_amplitude)};
  }
  if (d.kind == "single-mode") {
    const double kappa = 2 * std::numbers::pi * d.mode / g.length;
    auto shape = [&](double a) {
      return sample<double>(g, [&](const std::array<double, 3>& x) { return a * std::cos(kappa * x[0]); });
    };
    return {shape(d.amplitude), shape(d.psi_amplitude)};
  }
  // random-band-limited
  if (d.band >= g.n / 2) throw ConfigError("data.band must be below n/2");
  std::mt19937_64 rng(d.seed);
  std::normal_distribution<double> normal;
  auto draw = [&](double peak) {
    Field<double> f(g, false);
    for (std::size_t idx = 0; idx < g.size(); ++idx) {
      auto m = unflatten(idx, g.dim, g.n);
      bool inside = true;
      for (int a = 0; a < g.dim; ++a) inside = inside && std::abs(signed_mode(m[a], g.n)) <= d.band;
      if (inside) f.coeffs()[static_cast<Eigen::Index>(idx)] = {normal(rng), normal(rng)};
    }
    Eigen::ArrayXd x = to_physical(f).real();
    const double m = x.abs().maxCoeff();
    if (m > 0) x *= peak / m;
    return to_spectral_real<double>(x, g);
  };
  Field<double> phi = draw(d.amplitude);
  Field<double> psi = draw(d.psi_amplitude);
  return {phi, psi};
}

}  // namespace nrl
