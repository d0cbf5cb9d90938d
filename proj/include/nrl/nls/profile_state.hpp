#pragma once

#include <vector>

#include "nrl/spectral.hpp"

namespace nrl {

// Profiles g_n at a common time t. Only even n <= ka are stored; every other
// index (odd n, n > ka, n < 0) is identically zero.
template <typename Scalar>
class ProfileState {
 public:
  ProfileState() = default;
  ProfileState(const GridSpec& g, Scalar lambda, int ka) : grid_(g), lambda_(lambda), ka_(ka), zero_(g, true) {
    if (ka < 0 || ka % 2 != 0) throw DomainError("profiles: K_a must be even and >= 0");
    for (int n = 0; n <= ka; n += 2) even_.emplace_back(g, false);
  }

  const GridSpec& grid() const { return grid_; }
  Scalar lambda() const { return lambda_; }
  int ka() const { return ka_; }
  Scalar t = 0;

  bool stored(int n) const { return n >= 0 && n <= ka_ && n % 2 == 0; }

  const Field<Scalar>& g(int n) const { return stored(n) ? even_[n / 2] : zero_; }
  Field<Scalar>& g_mut(int n) {
    if (!stored(n)) throw DomainError("profiles: g_" + std::to_string(n) + " is not a stored profile");
    return even_[n / 2];
  }
  const std::vector<Field<Scalar>>& stored_profiles() const { return even_; }

  // lower profiles only: same state with K_a lowered
  ProfileState truncated(int ka) const {
    ProfileState s(grid_, lambda_, ka);
    s.t = t;
    for (int n = 0; n <= ka; n += 2) s.even_[n / 2] = g(n);
    return s;
  }

  template <typename T>
  ProfileState<T> cast() const {
    ProfileState<T> s(grid_, T(lambda_), ka_);
    s.t = T(t);
    for (int n = 0; n <= ka_; n += 2) s.g_mut(n) = even_[n / 2].template cast<T>();
    return s;
  }

 private:
  GridSpec grid_{};
  Scalar lambda_ = 1;
  int ka_ = 0;
  Field<Scalar> zero_;
  std::vector<Field<Scalar>> even_;
};

}  // namespace nrl
