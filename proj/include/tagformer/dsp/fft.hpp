#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "tagformer/common.hpp"

namespace tagformer::dsp {

/// Iterative radix-2 FFT with precomputed twiddles. Transform size must be a
/// power of two.
class Fft {
public:
  explicit Fft(int n) : n_(n) {
    if (n < 2 || (n & (n - 1)) != 0)
      throw ParamError("Fft: size must be a power of two >= 2, got " + std::to_string(n));
    rev_.resize(n);
    int log2n = 0;
    while ((1 << log2n) < n) ++log2n;
    for (int i = 0; i < n; ++i) {
      int r = 0;
      for (int b = 0; b < log2n; ++b)
        if (i & (1 << b)) r |= 1 << (log2n - 1 - b);
      rev_[i] = r;
    }
    tw_.resize(n / 2);
    for (int k = 0; k < n / 2; ++k) {
      const double a = -2.0 * std::numbers::pi * k / n;
      tw_[k] = {std::cos(a), std::sin(a)};
    }
  }

  int size() const { return n_; }

  void forward(std::complex<double>* a) const {
    for (int i = 0; i < n_; ++i)
      if (rev_[i] > i) std::swap(a[i], a[rev_[i]]);
    for (int len = 2; len <= n_; len <<= 1) {
      const int half = len / 2;
      const int step = n_ / len;
      for (int i = 0; i < n_; i += len) {
        for (int j = 0; j < half; ++j) {
          const std::complex<double> u = a[i + j];
          const std::complex<double> v = a[i + j + half] * tw_[j * step];
          a[i + j] = u + v;
          a[i + j + half] = u - v;
        }
      }
    }
  }

private:
  int n_;
  std::vector<int> rev_;
  std::vector<std::complex<double>> tw_;
};

/// Magnitude spectrum of a real frame: |FFT(x)| for bins 0 .. n/2.
inline std::vector<double> fft_magnitude(const std::vector<double>& x) {
  Fft fft(static_cast<int>(x.size()));
  std::vector<std::complex<double>> buf(x.begin(), x.end());
  fft.forward(buf.data());
  std::vector<double> mag(x.size() / 2 + 1);
  for (size_t k = 0; k < mag.size(); ++k) mag[k] = std::abs(buf[k]);
  return mag;
}

}  // namespace tagformer::dsp
