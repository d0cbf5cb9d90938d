#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <random>

#include "nrl/spectral.hpp"

namespace nrl::test {

// Random coefficients with |k_a| <= kmax on every axis (kmax < n/2 keeps Nyquist empty).
// Real fields get exact Hermitian symmetry.
template <typename Scalar = double>
Field<Scalar> random_field(const GridSpec& g, std::mt19937_64& rng, bool real, int kmax, Scalar decay = 0.0) {
  std::normal_distribution<double> nd(0.0, 1.0);
  Field<Scalar> f(g, real);
  auto& c = f.coeffs();
  for (std::size_t idx = 0; idx < g.size(); ++idx) {
    auto m = unflatten(idx, g.dim, g.n);
    bool inside = true;
    double k2 = 0;
    for (int a = 0; a < g.dim; ++a) {
      int k = signed_mode(m[a], g.n);
      if (std::abs(k) > kmax || m[a] == g.n / 2) inside = false;
      k2 += double(k) * k;
    }
    if (!inside) continue;
    double w = std::exp(-double(decay) * k2);
    c[static_cast<Eigen::Index>(idx)] = std::complex<Scalar>(Scalar(nd(rng) * w), Scalar(nd(rng) * w));
  }
  if (real) {
    for (std::size_t idx = 0; idx < g.size(); ++idx) {
      auto m = unflatten(idx, g.dim, g.n);
      for (int a = 0; a < g.dim; ++a) m[a] = (g.n - m[a]) % g.n;
      auto j = flatten(m, g.dim, g.n);
      auto i = static_cast<Eigen::Index>(idx);
      if (j < idx) c[i] = std::conj(c[static_cast<Eigen::Index>(j)]);
      if (j == idx) c[i] = c[i].real();
    }
  }
  return f;
}

// Classical RK4 on the 1D mode ODEs
//   eps^2 u_k'' = -(k^2 + eps^-2) u_k - lambda (u^3)_k,  |k| <= K,
// by direct triple convolution, on a box of length 2 pi. Returns u(T).
template <int K>
Field<double> rk4_mode_oracle(const Field<double>& phi, const Field<double>& psi, double eps, double lambda, double T, double h0) {
  using C = std::complex<double>;
  constexpr int M = 2 * K + 1;
  using Vec = std::array<C, M>;
  Vec u{}, v{};
  for (int k = -K; k <= K; ++k) {
    u[k + K] = phi.mode({k, 0, 0});
    v[k + K] = psi.mode({k, 0, 0}) / (eps * eps);
  }
  auto accel = [&](const Vec& x) {
    Vec a{};
    for (int k = -K; k <= K; ++k) {
      C conv = 0;
      for (int k1 = -K; k1 <= K; ++k1)
        for (int k2 = -K; k2 <= K; ++k2) {
          int k3 = k - k1 - k2;
          if (k3 >= -K && k3 <= K) conv += x[k1 + K] * x[k2 + K] * x[k3 + K];
        }
      a[k + K] = (-(k * k + 1 / (eps * eps)) * x[k + K] - lambda * conv) / (eps * eps);
    }
    return a;
  };
  const long m = std::lround(T / h0);
  const double h = T / m;
  for (long step = 0; step < m; ++step) {
    Vec k1u = v, k1v = accel(u), tu, tv;
    for (int i = 0; i < M; ++i) tu[i] = u[i] + 0.5 * h * k1u[i], tv[i] = v[i] + 0.5 * h * k1v[i];
    Vec k2u = tv, k2v = accel(tu);
    for (int i = 0; i < M; ++i) tu[i] = u[i] + 0.5 * h * k2u[i], tv[i] = v[i] + 0.5 * h * k2v[i];
    Vec k3u = tv, k3v = accel(tu);
    for (int i = 0; i < M; ++i) tu[i] = u[i] + h * k3u[i], tv[i] = v[i] + h * k3v[i];
    Vec k4u = tv, k4v = accel(tu);
    for (int i = 0; i < M; ++i) {
      u[i] += h / 6 * (k1u[i] + 2.0 * k2u[i] + 2.0 * k3u[i] + k4u[i]);
      v[i] += h / 6 * (k1v[i] + 2.0 * k2v[i] + 2.0 * k3v[i] + k4v[i]);
    }
  }
  Field<double> out(phi.grid(), true);
  for (int k = -K; k <= K; ++k) out.mode({k, 0, 0}) = u[k + K];
  return out;
}

}  // namespace nrl::test
