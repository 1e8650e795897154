#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "tagformer/common.hpp"
#include "tagformer/dsp/waveform.hpp"

namespace tagformer::dsp {

namespace detail {

inline double bessel_i0(double x) {
  // power series; converges fast for the beta values used here
  double sum = 1.0, term = 1.0;
  const double hx = 0.5 * x;
  for (int k = 1; k < 64; ++k) {
    term *= (hx / k) * (hx / k);
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return sum;
}

}  // namespace detail

/// Kaiser-windowed sinc interpolation kernel, tabulated on a dense grid.
/// cutoff is relative to the input Nyquist frequency (1.0 = no lowpass).
class SincKernel {
public:
  SincKernel(double cutoff, int zero_crossings = 64, double beta = 14.769656,
             int oversample = 32)
      : cutoff_(cutoff), oversample_(oversample) {
    if (cutoff <= 0.0 || cutoff > 1.0) throw ParamError("SincKernel: cutoff must be in (0, 1]");
    half_width_ = zero_crossings / cutoff;
    const int n = static_cast<int>(std::ceil(half_width_ * oversample)) + 2;
    table_.resize(n);
    const double i0b = detail::bessel_i0(beta);
    for (int i = 0; i < n; ++i) {
      const double t = static_cast<double>(i) / oversample;
      if (t >= half_width_) {
        table_[i] = 0.0;
        continue;
      }
      const double u = cutoff * t;
      const double sinc = u == 0.0 ? 1.0 : std::sin(std::numbers::pi * u) / (std::numbers::pi * u);
      const double r = t / half_width_;
      const double window = detail::bessel_i0(beta * std::sqrt(1.0 - r * r)) / i0b;
      table_[i] = cutoff * sinc * window;
    }
  }

  double half_width() const { return half_width_; }

  double operator()(double t) const {
    t = std::abs(t);
    if (t >= half_width_) return 0.0;
    const double pos = t * oversample_;
    const int i = static_cast<int>(pos);
    const double frac = pos - i;
    return table_[i] + frac * (table_[i + 1] - table_[i]);
  }

private:
  double cutoff_;
  double half_width_ = 0.0;
  int oversample_;
  std::vector<double> table_;
};

/// Band-limited resampling of x from sr to target_sr. Output length is
/// round(n * target_sr / sr). Per-sample kernel sums are normalized so a DC
/// input is reproduced exactly.
inline std::vector<float> resample_signal(const std::vector<float>& x, int sr, int target_sr) {
  if (sr <= 0 || target_sr <= 0) throw ParamError("resample: sample rates must be positive");
  if (sr == target_sr) return x;
  const std::int64_t n = static_cast<std::int64_t>(x.size());
  const std::int64_t out_n = std::llround(static_cast<double>(n) * target_sr / sr);
  std::vector<float> y(static_cast<size_t>(std::max<std::int64_t>(out_n, 0)), 0.0f);
  if (n == 0 || out_n <= 0) return y;

  const double ratio = static_cast<double>(target_sr) / sr;
  const SincKernel kernel(std::min(1.0, ratio));
  const double hw = kernel.half_width();

  parallel_for(out_n, 4096, [&](std::int64_t lo, std::int64_t hi) {
    for (std::int64_t m = lo; m < hi; ++m) {
      const double t = static_cast<double>(m) / ratio;
      const std::int64_t k0 = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::ceil(t - hw)));
      const std::int64_t k1 = std::min<std::int64_t>(n - 1, static_cast<std::int64_t>(std::floor(t + hw)));
      double acc = 0.0, wsum = 0.0;
      for (std::int64_t k = k0; k <= k1; ++k) {
        const double w = kernel(t - k);
        acc += w * x[static_cast<size_t>(k)];
        wsum += w;
      }
      y[static_cast<size_t>(m)] = wsum != 0.0 ? static_cast<float>(acc / wsum) : 0.0f;
    }
  });
  return y;
}

inline Waveform resample(const Waveform& w, int target_sr) {
  Waveform out;
  out.sample_rate = target_sr;
  out.samples = resample_signal(w.samples, w.sample_rate, target_sr);
  return out;
}

}  // namespace tagformer::dsp
