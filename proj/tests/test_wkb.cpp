#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>
#include <random>

#include "nrl/kg/kg.hpp"
#include "nrl/wkb/wkb.hpp"
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

template <typename S = double>
Field<S> gaussian(const GridSpec& g, double a, double w, double shift = 0) {
  return sample<S>(g, [&](auto x) {
    S d = x[0] - S(g.length / 2 + shift);
    return S(a) * std::exp(-d * d / S(2 * w * w));
  });
}

struct Setup {
  GridSpec g = grid1(128, 8 * pi);
  Field<double> phi = gaussian(g, 1.0, 1.2);
  Field<double> psi = gaussian(g, 0.5, 1.0, 0.7);
};

double h1(const Field<double>& f) { return sobolev_norm(f, 1.0); }
double h1(const SystemVector<double>& f) { return sobolev_norm(f, 1.0); }

}  // namespace

TEST_CASE("harmonic sets") {
  CHECK(harmonic_set(0, 2) == std::vector<int>{-1, 1});
  CHECK(harmonic_set(4, 2) == std::vector<int>{-5, -3, -1, 1, 3, 5});
  CHECK(harmonic_set(3, 2) == std::vector<int>{-3, -1, 1, 3});
  CHECK_THROWS_AS(harmonic_set(5, 2), DomainError);
  CHECK_THROWS_AS(harmonic_set(-1, 2), DomainError);
}

TEST_CASE("leading amplitudes and cubic harmonic coefficients") {
  Setup st;
  const double lambda = 1.3;
  auto s = initial_profiles(st.phi, st.psi, lambda, 2);
  advance_profiles_to(s, 0.3, 1e-2);
  Cascade<double> c(s);
  const auto& g0 = s.g(0);
  const auto& g2 = s.g(2);

  auto a0 = build_leading(0, c);
  CHECK(h1(a0.value.w[0]) == 0.0);
  CHECK(max_abs_diff(a0.value.v, g0 * C(0, 1)) == 0.0);
  CHECK(max_abs_diff(a0.value.u, g0) == 0.0);
  auto a1 = build_leading(1, c);
  CHECK(max_abs_diff(a1.value.w[0], derivative(g0, 0)) == 0.0);
  CHECK(h1(a1.value.v) == 0.0);
  CHECK(h1(a1.value.u) == 0.0);
  auto a2 = build_leading(2, c);
  CHECK(h1(a2.value.w[0]) == 0.0);
  CHECK(h1(Field<double>(a2.value.v - g2 * C(0, 1) - dt_profile(0, s))) < 1e-13);
  CHECK(max_abs_diff(a2.value.u, g2) == 0.0);

  auto g0c = conj(g0);
  auto f01 = cubic_harmonic_coefficient(0, 1, c);
  CHECK(h1(Field<double>(f01 - triple_product(g0, g0, g0c) * (3 * lambda))) < 1e-13);
  auto f03 = cubic_harmonic_coefficient(0, 3, c);
  CHECK(h1(Field<double>(f03 - triple_product(g0, g0, g0) * lambda)) < 1e-13);
  auto f21 = cubic_harmonic_coefficient(2, 1, c);
  // 3 lambda (g0^2 conj g2 + 2|g0|^2 g2 + (lambda/8)|g0|^4 g0)
  auto g0sq_abs = triple_product(g0, g0c, Field<double>(constant_field<double>(s.grid(), 1.0)));
  auto expect = triple_product(g0, g0, conj(g2)) + triple_product(g0, g0c, g2) * 2.0 +
                triple_product(g0sq_abs, g0sq_abs, g0) * (lambda / 8);
  CHECK(h1(Field<double>(f21 - expect * (3 * lambda))) < 1e-10);
  CHECK(cubic_harmonic_coefficient(2, 2, c).coeffs().abs().maxCoeff() == 0.0);
  CHECK(cubic_harmonic_coefficient(3, 1, c).coeffs().abs().maxCoeff() == 0.0);
}

TEST_CASE("higher harmonics: recursion equals closed forms") {
  Setup st;
  for (double lambda : {1.0, -0.6}) {
    auto s = initial_profiles(st.phi, st.psi, lambda, 4);
    advance_profiles_to(s, 0.25, 1e-2);
    Cascade<double> c(s);
    const auto& g0 = s.g(0);
    const auto& g2 = s.g(2);
    auto g0c = conj(g0);
    auto g03 = triple_product(g0, g0, g0);
    const int d = 1;

    // U_{2,3} = (lambda g0^3 / 8)(0, 3i, 1)
    auto u23 = build_higher_even(2, 3, c);
    CHECK(h1(u23.value.w[0]) == 0.0);
    CHECK(h1(Field<double>(u23.value.v - g03 * C(0, 3 * lambda / 8))) < 1e-11);
    CHECK(h1(Field<double>(u23.value.u - g03 * (lambda / 8))) < 1e-11);
    // also L_3^{-1}(0, -lambda g0^3, 0)
    SystemVector<double> rhs = SystemVector<double>::zero(s.grid());
    rhs.v = g03 * -lambda;
    auto via_inverse = apply_matrix(partial_inverse<double>(d, 3), rhs);
    CHECK(h1(SystemVector<double>(via_inverse - u23.value)) < 1e-11);

    // U_{3,3} = ((lambda/8) grad g0^3, 0, 0)
    auto u33 = build_higher_odd(3, 3, c);
    CHECK(h1(Field<double>(u33.value.w[0] - derivative(g03, 0) * (lambda / 8))) < 1e-11);
    CHECK(h1(u33.value.v) == 0.0);
    // U_{1,3} = 0
    CHECK(h1(build_higher_odd(1, 3, c).value) == 0.0);

    // U_{4,5} = -(3 lambda^2/8) g0^5 (0, -5i/24, -1/24)
    auto g05 = triple_product(g0, g0, g03);
    auto u45 = build_higher_even(4, 5, c);
    CHECK(h1(Field<double>(u45.value.v - g05 * C(0, 3 * lambda * lambda / 8 * 5.0 / 24))) < 1e-11);
    CHECK(h1(Field<double>(u45.value.u - g05 * (3 * lambda * lambda / 8 / 24))) < 1e-11);

    // U_{4,3} = -(lambda dt(g0^3)/8)(0, 5/4, -3i/4)
    //           + [(lambda/8) lap g0^3 - 3 lambda (g0^2 g2 + (lambda/4)|g0|^2 g0^3)](0, -3i/8, -1/8)
    auto dtg03 = triple_product(g0, g0, dt_profile(0, s)) * 3.0;
    auto bracket = laplacian(g03) * (lambda / 8) -
                   (triple_product(g0, g0, g2) + triple_product(g0, g0c, g03) * (lambda / 4)) * (3 * lambda);
    auto u43 = build_higher_even(4, 3, c);
    Field<double> v43 = dtg03 * (-lambda / 8 * 5.0 / 4) + bracket * C(0, -3.0 / 8);
    Field<double> w43 = dtg03 * C(0, lambda / 8 * 3.0 / 4) + bracket * (-1.0 / 8);
    CHECK(h1(Field<double>(u43.value.v - v43)) < 1e-11);
    CHECK(h1(Field<double>(u43.value.u - w43)) < 1e-11);

    // U_{5,5} = (grad u_{4,5}, 0, 0)
    auto u55 = build_higher_odd(5, 5, c);
    CHECK(max_abs_diff(u55.value.w[0], derivative(u45.value.u, 0)) < 1e-15);
  }
}

TEST_CASE("table structure") {
  Setup st;
  auto s = initial_profiles(st.phi, st.psi, 1.0, 2);
  advance_profiles_to(s, 0.1, 1e-2);
  WKBExpansion<double> e(s, 0.1);
  e.build();
  for (int n = 0; n <= 4; ++n)
    for (int p = -7; p <= 7; ++p) {
      const auto& a = e.amplitude(n, p);
      const auto& b = e.amplitude(n, -p);
      for (int i = 0; i < 3; ++i)
        CHECK((a.value.component(i).coeffs() == conj(b.value.component(i)).coeffs()).all());
      if (p % 2 == 0 || std::abs(p) > max_harmonic(n)) CHECK(h1(a.value) == 0.0);
      if (p == 1) CHECK(max_abs_diff(a.value.u, s.g(n)) == 0.0);
    }
  // odd orders have no u and no v
  for (int n : {1, 3})
    for (int p : harmonic_set(n, 2)) {
      CHECK(h1(e.amplitude(n, p).value.u) == 0.0);
      CHECK(h1(e.amplitude(n, p).value.v) == 0.0);
    }
  // cached derivatives agree with the jets
  Cascade<double> c(s);
  CHECK(max_abs_diff(e.amplitude(4, 3).dtt_u, c.u(4, 3, 2)) < 1e-13);
  CHECK(max_abs_diff(e.amplitude(2, 1).dt_v, c.v(2, 1, 1)) < 1e-13);
}

TEST_CASE("assembly") {
  Setup st;
  Field<double> z(st.g);
  // psi = 0: g0 real, u_0(0) = 2 g0(0) = phi
  auto s = initial_profiles(st.phi, z, 1.0, 0);
  CHECK(max_abs_diff(leading_order_u(s.g(0), 0.0), st.phi) < 1e-15);

  // K_a = 0 at t = 0: u_a = phi + eps^2 u_2(0), U_2 = U_{2,1} + U_{2,3} + c.c.
  const double eps = 0.2, lambda = 1.0;
  auto s0 = initial_profiles(st.phi, st.psi, lambda, 0);
  WKBExpansion<double> e(s0, eps);
  auto a = assemble(e);
  auto g03 = triple_product(s0.g(0), s0.g(0), s0.g(0));
  auto u2 = phase_pair(Field<double>(g03 * (lambda / 8)), 1, 0.0);
  CHECK(h1(Field<double>(a.u - st.phi - u2 * (eps * eps))) < 1e-13);
  CHECK(to_physical(a.u).imag().abs().maxCoeff() <= 1e-12);
  CHECK(a.u.is_real());
  // v-component: psi + eps^2 (2 Re dt g0 + Re(3i lambda g0^3/4))
  auto v2 = phase_pair(dt_profile(0, s0), 1, 0.0) + phase_pair(Field<double>(g03 * C(0, 3 * lambda / 8)), 1, 0.0);
  CHECK(h1(Field<double>(a.U.v - st.psi - v2 * (eps * eps))) < 1e-13);
  // assemble_u from the jets equals the table assembly
  auto later = initial_profiles(st.phi, st.psi, lambda, 2);
  advance_profiles_to(later, 0.37, 1e-2);
  WKBExpansion<double> el(later, eps);
  Cascade<double> cl(later);
  CHECK(max_abs_diff(assemble(el).u, assemble_u(cl, eps, el.theta(), 4)) < 1e-14);
}

TEST_CASE("initial perturbation") {
  Setup st;
  for (int ka : {0, 2, 4}) {
    auto s = initial_profiles(st.phi, st.psi, 1.0, ka);
    std::vector<double> tot;
    for (double eps : {0.4, 0.2, 0.1, 0.05}) {
      WKBExpansion<double> e(s, eps);
      auto exact = hyperbolic_lift(kg_init(st.phi, st.psi, eps, 1.0));
      auto ip = initial_perturbation(e, exact, 1.0);
      for (int n = 2; n <= ka + 1; ++n) CHECK(ip.per_order[n] <= 1e-12);
      double expect = std::pow(eps, ka + 2) * ip.per_order[ka + 2];
      CHECK(ip.total == doctest::Approx(expect).epsilon(1e-8));
      tot.push_back(ip.total);
    }
    for (std::size_t i = 1; i < tot.size(); ++i) CHECK(std::log2(tot[i - 1] / tot[i]) == doctest::Approx(ka + 2).epsilon(1e-6));
  }
}

TEST_CASE("cascade identities vanish") {
  Setup st;
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> ut(0.0, 1.0);
  for (int ka : {0, 2, 4}) {
    auto s = initial_profiles(st.phi, st.psi, 1.0, ka);
    for (int trial = 0; trial < 3; ++trial) {
      advance_profiles_to(s, s.t + ut(rng), 1e-2);
      Cascade<double> c(s);
      double worst = 0;
      for (int n = -2; n <= ka; ++n) {
        const int P = max_harmonic(n + 2);
        for (int p = -P - 2; p <= P + 2; ++p) worst = std::max(worst, h1(cascade_defect(c, n, p)));
      }
      MESSAGE("K_a=" << ka << " t=" << s.t << " max Phi = " << worst);
      CHECK(worst < 1e-12);
    }
  }
}

TEST_CASE("linear residual is the dispersion tail") {
  Setup st;
  auto s = initial_profiles(st.phi, st.psi, 0.0, 0);
  advance_profiles_to(s, 0.4, 1e-2);
  const double eps = 0.1;
  WKBExpansion<double> e(s, eps);
  auto r = residual_formula(e);
  // R = e^{i theta}(0, -(eps/4) lap^2 g0, 0) + c.c.
  auto expect = phase_pair(Field<double>(laplacian(laplacian(s.g(0))) * (-eps / 4)), 1, e.theta());
  CHECK(h1(Field<double>(r.v - expect)) < 1e-13);
  CHECK(h1(r.w[0]) < 1e-13);
  CHECK(h1(r.u) < 1e-13);
}

TEST_CASE("residual formula against centered differences") {
  using L = long double;
  Setup st;
  for (int ka : {0, 2}) {
    auto sd = initial_profiles(st.phi, st.psi, 1.0, ka);
    advance_profiles_to(sd, 0.3, 1e-2);
    for (double eps : {0.2, 0.1}) {
      ProfileState<L> s = sd.cast<L>();
      WKBExpansion<L> e(s, L(eps));
      SystemVector<L> r = residual_formula(e);
      r *= std::pow(L(eps), L(ka + 1));
      SystemVector<L> fd = residual_fd(s, L(eps), L(1e-6 * eps * eps));
      double diff = double(sobolev_norm(SystemVector<L>(r - fd), L(1)));
      double size = double(sobolev_norm(r, L(1)));
      MESSAGE("K_a=" << ka << " eps=" << eps << " |eps^{K+1} R| = " << size << " |diff| = " << diff);
      CHECK(diff < 1e-8);
    }
  }
}
