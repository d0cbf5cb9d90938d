#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>
#include <random>

#include "nrl/kg/kg.hpp"
#include "test_util.hpp"

using namespace nrl;
using C = std::complex<double>;
constexpr double pi = std::numbers::pi;

namespace {

GridSpec grid1(int n, double L) {
  GridSpec g;
  g.n = n;
  g.length = L;
  return g;
}

Field<double> gaussian(const GridSpec& g, double a, double w) {
  return sample<double>(g, [&](auto x) {
    double d = x[0] - g.length / 2;
    return a * std::exp(-d * d / (2 * w * w));
  });
}

double max_energy_drift(KGState<double> s, double dt, double T) {
  double e0 = kg_energy(s);
  KGStepper<double> st(s.u.grid(), s.eps, s.lambda, dt);
  long steps = std::lround(T / dt);
  double worst = 0;
  for (long k = 0; k < steps; ++k) {
    st.step(s);
    worst = std::max(worst, std::abs(kg_energy(s) - e0) / e0);
  }
  return worst;
}

}  // namespace

TEST_CASE("kg_init") {
  auto g = grid1(16, 2 * pi);
  auto co = sample<double>(g, [](auto x) { return std::cos(x[0]); });
  Field<double> z(g);
  auto s = kg_init(co, z, 0.1, 1.0);
  CHECK(s.ut.coeffs().abs().maxCoeff() == 0.0);
  auto s2 = kg_init(z, co, 0.1, 1.0);
  CHECK(max_abs_diff(s2.ut, co * 100.0) < 1e-12);
  CHECK_THROWS_AS(kg_init(co, z, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(kg_init(co, z, 0.0, 1.0), DomainError);
  Field<double> cplx = co * C(0, 1);
  CHECK_THROWS_AS(kg_init(cplx, z, 0.5, 1.0), DomainError);
}

TEST_CASE("linear modes are exact") {
  auto g = grid1(16, 2 * pi);
  const double eps = 0.3, kap = 2;
  const double w = std::sqrt(kap * kap + 1 / (eps * eps)) / eps;
  auto co = sample<double>(g, [&](auto x) { return std::cos(kap * x[0]); });
  Field<double> z(g);
  auto s = kg_init(co, z, eps, 0.0);
  const double dt = 1e-3;
  KGStepper<double> st(g, eps, 0.0, dt);
  double e0 = kg_energy(s);
  st.advance(s, 10000);
  CHECK(max_abs_diff(s.u, co * std::cos(w * 10.0)) < 1e-10);
  CHECK(std::abs(kg_energy(s) - e0) / e0 < 1e-12);

  auto s2 = kg_init(z, co, eps, 0.0);
  s2 = kg_step(s2, 0.37);
  CHECK(max_abs_diff(s2.u, co * (std::sin(w * 0.37) / (eps * eps * w))) < 1e-12);
  // any dt
  auto s3 = kg_init(co, z, eps, 0.0);
  s3 = kg_step(s3, 1.7);
  CHECK(max_abs_diff(s3.u, co * std::cos(w * 1.7)) < 1e-12);
}

TEST_CASE("RK4 mode-ODE oracle on N=8") {
  auto g = grid1(8, 2 * pi);
  std::mt19937_64 rng(8);
  auto phi = test::random_field(g, rng, true, 3);
  auto psi = test::random_field(g, rng, true, 3);
  // O(1) data: max |phi| = max |psi| = 1
  phi *= 1.0 / to_physical(phi).abs().maxCoeff();
  psi *= 1.0 / to_physical(psi).abs().maxCoeff();
  const double eps = 0.5, lambda = 1.0, T = 1.0;
  const double dt = default_kg_dt(eps);
  auto s = kg_init(phi, psi, eps, lambda);
  KGStepper<double>(g, eps, lambda, dt).advance(s, std::lround(T / dt));

  // modes k = -3..3, Nyquist left empty
  auto oracle = test::rk4_mode_oracle<3>(phi, psi, eps, lambda, T, dt / 100);
  auto diff = to_physical(Field<double>(s.u - oracle)).abs().maxCoeff();
  MESSAGE("KG vs RK4 max-norm difference: " << diff);
  CHECK(diff < 1e-6);
}

TEST_CASE("second order, reversibility, realness") {
  auto g = grid1(128, 16 * pi);
  auto phi = gaussian(g, 1.0, 1.0), psi = gaussian(g, 0.5, 1.0);
  const double eps = 0.2;
  auto s0 = kg_init(phi, psi, eps, 1.0);
  auto run = [&](int steps) {
    auto s = s0;
    KGStepper<double>(g, eps, 1.0, 1.0 / steps).advance(s, steps);
    return s;
  };
  auto ref = run(8000 * 16);
  double prev = 0;
  for (int steps : {2000, 4000, 8000}) {
    double err = sobolev_norm(Field<double>(run(steps).u - ref.u), 1.0);
    if (prev > 0) {
      CHECK(prev / err >= 3.6);
      CHECK(prev / err <= 4.4);
    }
    prev = err;
  }
  // energy drift ~ dt^2
  double d1 = max_energy_drift(s0, 2e-3, 1.0), d2 = max_energy_drift(s0, 1e-3, 1.0);
  MESSAGE("energy drift dt=2e-3: " << d1 << ", dt=1e-3: " << d2);
  CHECK(d1 / d2 >= 3.5);
  CHECK(d1 / d2 <= 4.5);

  auto s = s0;
  KGStepper<double>(g, eps, 1.0, 1e-3).advance(s, 50);
  KGStepper<double>(g, eps, 1.0, -1e-3).advance(s, 50);
  double rev = sobolev_norm(Field<double>(s.u - s0.u), 1.0) / sobolev_norm(s0.u, 1.0);
  MESSAGE("time reversal defect: " << rev);
  CHECK(rev < 1e-11);

  auto r = s0;
  KGStepper<double>(g, eps, 1.0, 1e-3).advance(r, 10000);
  CHECK(r.u.is_real());
  auto phys = to_physical(r.u);
  CHECK(phys.imag().abs().maxCoeff() <= 1e-12);
}

TEST_CASE("reference solve") {
  auto g = grid1(64, 8 * pi);
  const double eps = 0.2, kap = 0.75;
  const double w = std::sqrt(kap * kap + 1 / (eps * eps)) / eps;
  auto co = sample<double>(g, [&](auto x) { return std::cos(kap * x[0]); });
  Field<double> z(g);
  auto lin = kg_reference_solve(co, z, eps, 0.0, 1.0, 1e-10);
  CHECK(sobolev_norm(Field<double>(lin.u - co * std::cos(w)), 1.0) < 1e-10);

  auto phi = gaussian(g, 1.0, 1.0), psi = gaussian(g, 0.5, 1.0);
  ReferenceInfo info;
  auto ref = kg_reference_solve(phi, psi, eps, 1.0, 1.0, 1e-8, &info);
  REQUIRE(info.differences.size() >= 2);
  for (std::size_t i = 1; i < info.differences.size(); ++i)
    CHECK(info.differences[i - 1] / info.differences[i] == doctest::Approx(4.0).epsilon(0.1));
  CHECK(info.final_difference < 1e-8);
  CHECK(ref.t == 1.0);

  auto zero_t = kg_reference_solve(phi, psi, eps, 1.0, 0.0, 1e-8);
  CHECK(max_abs_diff(zero_t.u, phi) == 0.0);
  CHECK_THROWS_AS(kg_reference_solve(phi, psi, eps, 1.0, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(kg_reference_trajectory<double>(phi, psi, eps, 1.0, {1.0}, 1e-2, 1e-30, nullptr, 2), ConvergenceError);
}

TEST_CASE("hyperbolic lift") {
  auto g = grid1(16, 2 * pi);
  auto co = sample<double>(g, [](auto x) { return std::cos(x[0]); });
  auto si = sample<double>(g, [](auto x) { return std::sin(x[0]); });
  Field<double> z(g);
  auto U = hyperbolic_lift(kg_init(co, z, 0.1, 1.0));
  REQUIRE(U.w.size() == 1);
  CHECK(max_abs_diff(U.w[0], si * -0.1) < 1e-15);
  CHECK(U.v.coeffs().abs().maxCoeff() == 0.0);
  CHECK(max_abs_diff(U.u, co) == 0.0);
  CHECK(sobolev_norm(hyperbolic_lift(kg_init(z, z, 0.1, 1.0)), 1.0) == 0.0);
  auto s = kg_init(co, si, 0.3, 1.0);
  auto L = hyperbolic_lift(s);
  double comb = std::sqrt(std::pow(sobolev_norm(L.w[0], 1.0), 2) + std::pow(sobolev_norm(L.v, 1.0), 2) + std::pow(sobolev_norm(L.u, 1.0), 2));
  CHECK(sobolev_norm(L, 1.0) == doctest::Approx(comb).epsilon(1e-15));
}

TEST_CASE("positive-frequency part") {
  auto g = grid1(16, 2 * pi);
  const double eps = 0.4;
  auto co = sample<double>(g, [](auto x) { return std::cos(2 * x[0]); });
  auto si = sample<double>(g, [](auto x) { return std::sin(x[0]); });
  auto s = kg_init(co, si, eps, 0.0);
  auto p0 = positive_frequency_part(s);
  CHECK(max_abs_diff(Field<double>(p0 + conj(p0)), co) < 1e-15);
  // linear flow multiplies each mode by e^{i omega t}
  auto s1 = kg_step(s, 0.9);
  auto p1 = positive_frequency_part(s1);
  for (int k : {-2, -1, 1, 2}) {
    const double w = std::sqrt(k * k + 1 / (eps * eps)) / eps;
    CHECK(std::abs(p1.mode({k, 0, 0}) - p0.mode({k, 0, 0}) * std::polar(1.0, w * 0.9)) < 1e-14);
  }
}
