#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "tagformer/common.hpp"

namespace tagformer::dsp {

/// Mono audio. Samples are dimensionless amplitudes, nominally in [-1, 1].
struct Waveform {
  std::vector<float> samples;
  int sample_rate = 0;

  std::int64_t size() const { return static_cast<std::int64_t>(samples.size()); }
  double duration_seconds() const {
    return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate : 0.0;
  }
};

inline void validate(const Waveform& w, const char* who) {
  if (w.sample_rate <= 0)
    throw ParamError(std::string(who) + ": sample_rate must be positive, got " +
                     std::to_string(w.sample_rate));
  for (float s : w.samples)
    if (!std::isfinite(s)) throw ParamError(std::string(who) + ": non-finite sample");
}

inline std::int64_t seconds_to_samples(double seconds, int sample_rate) {
  return std::llround(seconds * sample_rate);
}

/// Splits w into fixed-length chunks. The final partial chunk is dropped.
/// hop_seconds <= 0 selects non-overlapping chunks (hop = chunk length).
inline std::vector<Waveform> chunk_waveform(const Waveform& w, double chunk_seconds = 3.69,
                                            double hop_seconds = 0.0) {
  if (chunk_seconds <= 0) throw ParamError("chunk_waveform: chunk_seconds must be positive");
  const std::int64_t chunk = seconds_to_samples(chunk_seconds, w.sample_rate);
  const std::int64_t hop =
      hop_seconds > 0 ? seconds_to_samples(hop_seconds, w.sample_rate) : chunk;
  if (chunk < 1 || hop < 1) throw ParamError("chunk_waveform: chunk/hop shorter than one sample");
  if (w.size() < chunk)
    throw ParamError("chunk_waveform: input of " + std::to_string(w.size()) +
                     " samples is shorter than one chunk (" + std::to_string(chunk) + ")");
  std::vector<Waveform> out;
  for (std::int64_t start = 0; start + chunk <= w.size(); start += hop) {
    Waveform c;
    c.sample_rate = w.sample_rate;
    c.samples.assign(w.samples.begin() + start, w.samples.begin() + start + chunk);
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace tagformer::dsp
