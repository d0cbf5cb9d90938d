#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "nrl/algebra/system.hpp"
#include "nrl/spectral.hpp"

// eps^2 dtt u - lap u + eps^{-2} u + lambda u^3 = 0,  u(0) = phi,  dt u(0) = psi / eps^2.
// Written as dtt u + omega^2 u = G(u) with omega(kappa) = sqrt(kappa^2 + eps^{-2}) / eps and
// G(u) = -lambda u^3 / eps^2 (dealiased cube).

namespace nrl {

template <typename Scalar>
struct KGState {
  Field<Scalar> u;
  Field<Scalar> ut;
  Scalar t = 0;
  Scalar eps = 0.1;
  Scalar lambda = 1;
};

template <typename Scalar>
KGState<Scalar> kg_init(const Field<Scalar>& phi, const Field<Scalar>& psi, Scalar eps, Scalar lambda) {
  require_same_grid(phi.grid(), psi.grid(), "kg_init");
  if (!phi.is_real() || !psi.is_real()) throw DomainError("kg_init: phi and psi must be real");
  if (!(eps > Scalar(0) && eps < Scalar(1))) throw DomainError("kg_init: eps must lie in (0, 1)");
  KGState<Scalar> s;
  s.u = phi;
  s.ut = psi / (eps * eps);
  s.t = 0;
  s.eps = eps;
  s.lambda = lambda;
  return s;
}

// Trigonometric integrator with trapezoidal forcing (kick / exact rotation / kick):
//   u+  = cos u + sin/omega ut + (dt/2) sin/omega G(u)
//   ut+ = -omega sin u + cos ut + (dt/2)(cos G(u) + G(u+))
// Exact for lambda = 0, symmetric, second order.
template <typename Scalar>
class KGStepper {
 public:
  KGStepper(const GridSpec& g, Scalar eps, Scalar lambda, Scalar dt) : grid_(g), eps_(eps), lambda_(lambda), dt_(dt) {
    const auto& k2 = Wavenumbers<Scalar>::of(g).k2;
    const Eigen::Index n = k2.size();
    cos_.resize(n);
    sin_over_.resize(n);
    omega_sin_.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const Scalar w = std::sqrt(k2[i] + Scalar(1) / (eps * eps)) / eps;
      cos_[i] = std::cos(w * dt);
      sin_over_[i] = std::sin(w * dt) / w;
      omega_sin_[i] = w * std::sin(w * dt);
    }
  }

  Scalar dt() const { return dt_; }

  void step(KGState<Scalar>& s) {
    if (!force_) force_ = forcing(s.u);
    const auto& u = s.u.coeffs();
    const auto& ut = s.ut.coeffs();
    const auto& g0 = force_->coeffs();
    const Scalar h = dt_ / 2;
    typename Field<Scalar>::Coeffs un = cos_ * u + sin_over_ * (ut + h * g0);
    Field<Scalar> unew(grid_, std::move(un), true);
    Field<Scalar> g1 = forcing(unew);
    typename Field<Scalar>::Coeffs utn = -omega_sin_ * u + cos_ * (ut + h * g0) + h * g1.coeffs();
    s.u = std::move(unew);
    s.ut = Field<Scalar>(grid_, std::move(utn), true);
    s.t += dt_;
    force_ = std::move(g1);
  }

  void advance(KGState<Scalar>& s, long steps) {
    force_.reset();
    for (long k = 0; k < steps; ++k) step(s);
  }

 private:
  Field<Scalar> forcing(const Field<Scalar>& u) const {
    if (lambda_ == Scalar(0)) return Field<Scalar>(grid_, true);
    return cube(u) * (-lambda_ / (eps_ * eps_));
  }

  GridSpec grid_;
  Scalar eps_, lambda_, dt_;
  Eigen::Array<Scalar, Eigen::Dynamic, 1> cos_, sin_over_, omega_sin_;
  std::optional<Field<Scalar>> force_;
};

template <typename Scalar>
KGState<Scalar> kg_step(const KGState<Scalar>& s, Scalar dt) {
  KGState<Scalar> out = s;
  KGStepper<Scalar>(s.u.grid(), s.eps, s.lambda, dt).step(out);
  return out;
}

// int eps^2 ut^2 + |grad u|^2 + eps^{-2} u^2 + (lambda/2) u^4
template <typename Scalar>
Scalar kg_energy(const KGState<Scalar>& s) {
  auto sq = [](Scalar x) { return x * x; };
  Scalar e = sq(s.eps * l2_norm(s.ut)) + sq(l2_norm(s.u) / s.eps);
  for (const auto& d : gradient(s.u)) e += sq(l2_norm(d));
  if (s.lambda != Scalar(0)) {
    // band-limited u: the padded grid integrates u^4 exactly
    const GridSpec& g = s.u.grid();
    Eigen::Array<Scalar, Eigen::Dynamic, 1> x = to_padded_physical(s.u).real();
    e += s.lambda / 2 * x.square().square().sum() * Scalar(g.volume()) / Scalar(g.padded_size());
  }
  return e;
}

// U = (eps grad u, eps^2 dt u, u)
template <typename Scalar>
SystemVector<Scalar> hyperbolic_lift(const KGState<Scalar>& s) {
  SystemVector<Scalar> U;
  for (auto& d : gradient(s.u)) U.w.push_back(d * s.eps);
  U.v = s.ut * (s.eps * s.eps);
  U.u = s.u;
  return U;
}

// Positive-frequency part (1/2)(u - i omega^{-1} ut), omega = sqrt(k^2 + eps^-2)/eps,
// so u = 2 Re of it. For lambda = 0 it rotates exactly by e^{i omega t}.
template <typename Scalar>
Field<Scalar> positive_frequency_part(const KGState<Scalar>& s) {
  const auto& k2 = Wavenumbers<Scalar>::of(s.u.grid()).k2;
  const Scalar e2 = s.eps * s.eps;
  Eigen::Array<Scalar, Eigen::Dynamic, 1> inv_w = e2 / (k2 * e2 + Scalar(1)).sqrt();
  typename Field<Scalar>::Coeffs c = Scalar(0.5) * (s.u.coeffs() - std::complex<Scalar>(0, 1) * inv_w * s.ut.coeffs());
  return Field<Scalar>(s.u.grid(), std::move(c), false);
}

inline double default_kg_dt(double eps, double factor = 1.0 / 20) { return std::min(factor * eps * eps, 1e-3); }

struct ReferenceInfo {
  int levels = 0;                  // number of halvings used
  double final_difference = 0;     // H^1 distance between the last two levels
  std::vector<double> differences; // per level
};

// Self-converged KG solution at every requested time (sorted, >= 0).
// Level l uses 2^l times as many steps per segment as level 0; levels are
// refined until two successive levels differ by < tol in H^1 at every time.
template <typename Scalar>
std::vector<KGState<Scalar>> kg_reference_trajectory(const Field<Scalar>& phi, const Field<Scalar>& psi, Scalar eps, Scalar lambda,
                                                     const std::vector<Scalar>& times, Scalar dt0, Scalar tol,
                                                     ReferenceInfo* info = nullptr, int max_halvings = 12) {
  if (!(tol > Scalar(0))) throw DomainError("kg_reference: tol must be positive");
  for (std::size_t i = 0; i < times.size(); ++i)
    if (times[i] < Scalar(0) || (i > 0 && times[i] < times[i - 1])) throw DomainError("kg_reference: times must be sorted and >= 0");
  const KGState<Scalar> init = kg_init(phi, psi, eps, lambda);

  std::vector<long> base_steps;
  Scalar prev_t = 0;
  for (Scalar t : times) {
    const Scalar span = t - prev_t;
    base_steps.push_back(span > Scalar(0) ? std::max<long>(1, static_cast<long>(std::ceil(span / dt0 - Scalar(1e-9)))) : 0);
    prev_t = t;
  }

  auto run = [&](int level) {
    std::vector<KGState<Scalar>> out;
    KGState<Scalar> s = init;
    Scalar t0 = 0;
    for (std::size_t i = 0; i < times.size(); ++i) {
      const long steps = base_steps[i] << level;
      if (steps > 0) {
        KGStepper<Scalar> st(phi.grid(), eps, lambda, (times[i] - t0) / Scalar(steps));
        st.advance(s, steps);
      }
      s.t = times[i];
      t0 = times[i];
      out.push_back(s);
    }
    return out;
  };

  ReferenceInfo local;
  std::vector<KGState<Scalar>> coarse = run(0);
  bool trivial = true;
  for (long b : base_steps) trivial = trivial && b == 0;
  if (trivial) {
    if (info) *info = local;
    return coarse;
  }
  for (int level = 1; level <= max_halvings; ++level) {
    std::vector<KGState<Scalar>> fine = run(level);
    Scalar diff = 0;
    for (std::size_t i = 0; i < times.size(); ++i)
      diff = std::max(diff, sobolev_norm(Field<Scalar>(fine[i].u - coarse[i].u), Scalar(1)));
    local.levels = level;
    local.final_difference = double(diff);
    local.differences.push_back(double(diff));
    if (diff < tol) {
      if (info) *info = local;
      return fine;
    }
    coarse = std::move(fine);
  }
  throw ConvergenceError("kg_reference: no convergence to tol after " + std::to_string(max_halvings) +
                         " halvings at eps = " + std::to_string(double(eps)));
}

template <typename Scalar>
KGState<Scalar> kg_reference_solve(const Field<Scalar>& phi, const Field<Scalar>& psi, Scalar eps, Scalar lambda, Scalar t_end,
                                   Scalar tol, ReferenceInfo* info = nullptr) {
  return kg_reference_trajectory(phi, psi, eps, lambda, std::vector<Scalar>{t_end}, Scalar(default_kg_dt(double(eps))), tol, info)
      .back();
}

}  // namespace nrl
