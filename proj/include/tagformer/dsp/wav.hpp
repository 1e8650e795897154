#pragma once

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "tagformer/common.hpp"
#include "tagformer/dsp/resample.hpp"
#include "tagformer/dsp/waveform.hpp"

namespace tagformer::dsp {

enum class WavEncoding { pcm16, float32 };

namespace detail {

inline std::uint32_t rd_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}
inline std::uint16_t rd_u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}
inline void wr_u32(std::vector<unsigned char>& b, std::uint32_t v) {
  b.push_back(v & 0xff);
  b.push_back((v >> 8) & 0xff);
  b.push_back((v >> 16) & 0xff);
  b.push_back((v >> 24) & 0xff);
}
inline void wr_u16(std::vector<unsigned char>& b, std::uint16_t v) {
  b.push_back(v & 0xff);
  b.push_back((v >> 8) & 0xff);
}

}  // namespace detail

/// Decodes a RIFF WAV file (16/24/32-bit PCM or 32-bit float), averages
/// channels to mono, and scales samples to [-1, 1]. No resampling here.
inline Waveform read_wav(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("read_wav: cannot open " + path);
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(f)),
                                   std::istreambuf_iterator<char>());
  if (f.bad()) throw IoError("read_wav: read failure on " + path);
  if (bytes.size() < 44 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
    throw FormatError("read_wav: " + path + " is not a RIFF/WAVE file");

  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t sample_rate = 0;
  const unsigned char* data = nullptr;
  std::uint32_t data_size = 0;
  bool have_fmt = false;

  size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const unsigned char* hdr = bytes.data() + pos;
    std::uint32_t size = detail::rd_u32(hdr + 4);
    const size_t body = pos + 8;
    if (body + size > bytes.size()) size = static_cast<std::uint32_t>(bytes.size() - body);
    if (std::memcmp(hdr, "fmt ", 4) == 0 && size >= 16) {
      const unsigned char* p = bytes.data() + body;
      format = detail::rd_u16(p);
      channels = detail::rd_u16(p + 2);
      sample_rate = detail::rd_u32(p + 4);
      bits = detail::rd_u16(p + 14);
      if (format == 0xFFFE && size >= 40) format = detail::rd_u16(p + 24);  // extensible
      have_fmt = true;
    } else if (std::memcmp(hdr, "data", 4) == 0) {
      data = bytes.data() + body;
      data_size = size;
    }
    pos = body + size + (size & 1);  // chunks are word-aligned
  }

  if (!have_fmt || data == nullptr)
    throw FormatError("read_wav: " + path + " is missing fmt/data chunks");
  if (channels == 0 || sample_rate == 0)
    throw FormatError("read_wav: " + path + " has a corrupt fmt chunk");
  const bool is_float = format == 3;
  if (!(format == 1 || is_float))
    throw FormatError("read_wav: " + path + ": unsupported format tag " + std::to_string(format));
  if (is_float && bits != 32)
    throw FormatError("read_wav: " + path + ": only 32-bit float data is supported");
  if (!is_float && bits != 16 && bits != 24 && bits != 32)
    throw FormatError("read_wav: " + path + ": unsupported PCM depth " + std::to_string(bits));

  const std::uint32_t bytes_per = bits / 8;
  const std::uint64_t n_frames = data_size / (bytes_per * channels);
  if (n_frames == 0) throw DataError("read_wav: " + path + " contains no audio samples");

  Waveform w;
  w.sample_rate = static_cast<int>(sample_rate);
  w.samples.resize(n_frames);
  const double inv_ch = 1.0 / channels;
  for (std::uint64_t i = 0; i < n_frames; ++i) {
    double acc = 0.0;
    for (std::uint32_t c = 0; c < channels; ++c) {
      const unsigned char* p = data + (i * channels + c) * bytes_per;
      double v = 0.0;
      if (is_float) {
        float fv;
        std::memcpy(&fv, p, 4);
        v = fv;
      } else if (bits == 16) {
        v = static_cast<std::int16_t>(p[0] | (p[1] << 8)) / 32768.0;
      } else if (bits == 24) {
        std::int32_t s = p[0] | (p[1] << 8) | (p[2] << 16);
        if (s & 0x800000) s |= ~0xFFFFFF;
        v = s / 8388608.0;
      } else {
        std::int32_t s;
        std::memcpy(&s, p, 4);
        v = s / 2147483648.0;
      }
      acc += v;
    }
    w.samples[i] = static_cast<float>(acc * inv_ch);
  }
  return w;
}

/// read_wav + resample to target_sr. The resampler is bypassed when the file
/// is already at the target rate.
inline Waveform load_audio(const std::string& path, int target_sr = 22050) {
  Waveform w = read_wav(path);
  if (w.sample_rate != target_sr) w = resample(w, target_sr);
  validate(w, "load_audio");
  return w;
}

inline void write_wav(const std::string& path, const Waveform& w,
                      WavEncoding enc = WavEncoding::pcm16) {
  const std::uint16_t channels = 1;
  const std::uint16_t bits = enc == WavEncoding::pcm16 ? 16 : 32;
  const std::uint16_t fmt = enc == WavEncoding::pcm16 ? 1 : 3;
  const std::uint32_t bytes_per = bits / 8;
  const std::uint32_t data_size = static_cast<std::uint32_t>(w.samples.size() * bytes_per);

  std::vector<unsigned char> b;
  b.reserve(44 + data_size);
  b.insert(b.end(), {'R', 'I', 'F', 'F'});
  detail::wr_u32(b, 36 + data_size);
  b.insert(b.end(), {'W', 'A', 'V', 'E', 'f', 'm', 't', ' '});
  detail::wr_u32(b, 16);
  detail::wr_u16(b, fmt);
  detail::wr_u16(b, channels);
  detail::wr_u32(b, static_cast<std::uint32_t>(w.sample_rate));
  detail::wr_u32(b, static_cast<std::uint32_t>(w.sample_rate) * bytes_per * channels);
  detail::wr_u16(b, static_cast<std::uint16_t>(bytes_per * channels));
  detail::wr_u16(b, bits);
  b.insert(b.end(), {'d', 'a', 't', 'a'});
  detail::wr_u32(b, data_size);
  for (float s : w.samples) {
    if (enc == WavEncoding::pcm16) {
      const float c = std::clamp(s, -1.0f, 1.0f);
      const int v = static_cast<int>(std::lround(c * 32767.0f));
      detail::wr_u16(b, static_cast<std::uint16_t>(static_cast<std::int16_t>(v)));
    } else {
      unsigned char p[4];
      std::memcpy(p, &s, 4);
      b.insert(b.end(), p, p + 4);
    }
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("write_wav: cannot open " + path + " for writing");
  f.write(reinterpret_cast<const char*>(b.data()), static_cast<std::streamsize>(b.size()));
  if (!f) throw IoError("write_wav: write failure on " + path);
}

}  // namespace tagformer::dsp
