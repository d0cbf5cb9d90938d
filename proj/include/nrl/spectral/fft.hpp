#pragma once

#include <complex>
#include <map>
#include <numbers>
#include <type_traits>
#include <vector>

#include <Eigen/Core>
#include <unsupported/Eigen/FFT>

#include "nrl/spectral/grid.hpp"

namespace nrl::detail {

template <typename Scalar>
Eigen::FFT<Scalar>& fft_engine() {
  thread_local Eigen::FFT<Scalar> engine = [] {
    Eigen::FFT<Scalar> e;
    e.SetFlag(Eigen::FFT<Scalar>::Unscaled);
    return e;
  }();
  return engine;
}

// Radix-2 transform with twiddles in the working precision. Eigen's kissfft
// backend builds its twiddles in double, which caps long double accuracy.
template <typename Scalar>
class ExtendedFft {
 public:
  using C = std::complex<Scalar>;
  void run(C* dst, const C* src, int n, bool inverse) {
    const auto& w = twiddles(n);
    int bits = 0;
    while ((1 << bits) < n) ++bits;
    if ((1 << bits) != n) {
      // plain DFT fallback
      for (int k = 0; k < n; ++k) {
        C acc(0);
        for (int j = 0; j < n; ++j) {
          C t = w[(static_cast<long>(j) * k) % n];
          acc += src[j] * (inverse ? std::conj(t) : t);
        }
        dst[k] = acc;
      }
      return;
    }
    for (int i = 0; i < n; ++i) {
      int r = 0;
      for (int b = 0; b < bits; ++b) r |= ((i >> b) & 1) << (bits - 1 - b);
      dst[r] = src[i];
    }
    for (int len = 2; len <= n; len <<= 1) {
      const int step = n / len;
      for (int start = 0; start < n; start += len)
        for (int j = 0; j < len / 2; ++j) {
          C t = w[j * step];
          if (inverse) t = std::conj(t);
          C a = dst[start + j];
          C b = dst[start + j + len / 2] * t;
          dst[start + j] = a + b;
          dst[start + j + len / 2] = a - b;
        }
    }
  }

 private:
  const std::vector<C>& twiddles(int n) {
    auto it = cache_.find(n);
    if (it != cache_.end()) return it->second;
    std::vector<C> w(n);
    const Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
    for (int j = 0; j < n; ++j) w[j] = std::polar(Scalar(1), -two_pi * Scalar(j) / Scalar(n));
    return cache_.emplace(n, std::move(w)).first->second;
  }
  std::map<int, std::vector<C>> cache_;
};

template <typename Scalar>
void fft_1d(std::complex<Scalar>* dst, const std::complex<Scalar>* src, int n, bool inverse) {
  if constexpr (std::is_same_v<Scalar, float> || std::is_same_v<Scalar, double>) {
    auto& fft = fft_engine<Scalar>();
    if (inverse)
      fft.inv(dst, src, n);
    else
      fft.fwd(dst, src, n);
  } else {
    thread_local ExtendedFft<Scalar> fft;
    fft.run(dst, src, n, inverse);
  }
}

// Unscaled multi-dimensional transform in place, one axis at a time.
// forward: sum_x a(x) e^{-ikx}; inverse: sum_k a(k) e^{+ikx}.
template <typename Scalar>
void fft_inplace(Eigen::Array<std::complex<Scalar>, Eigen::Dynamic, 1>& a, int dim, int n, bool inverse) {
  using C = std::complex<Scalar>;
  std::vector<C> in(n), out(n);
  const Eigen::Index total = a.size();
  Eigen::Index stride = 1;
  for (int axis = dim - 1; axis >= 0; --axis) {
    const Eigen::Index block = stride * n;
    for (Eigen::Index base = 0; base < total; base += block) {
      for (Eigen::Index off = 0; off < stride; ++off) {
        for (int j = 0; j < n; ++j) in[j] = a[base + off + j * stride];
        fft_1d<Scalar>(out.data(), in.data(), n, inverse);
        for (int j = 0; j < n; ++j) a[base + off + j * stride] = out[j];
      }
    }
    stride = block;
  }
}

}  // namespace nrl::detail
