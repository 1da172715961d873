#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace fustft {

using cdouble = std::complex<double>;

// Which frequency grid each frame is evaluated on:
//   stft       all L_w bins k/L_w
//   fostft     L_w + N_z bins k/(L_w + N_z), i.e. zero-padded frames
//   fustft_i   L_w/2 bins on the even grid 2k/L_w
//   fustft_ii  L_w/2 bins on the odd grid (2k+1)/L_w
//   fustft_iii even grid on even frames, odd grid on odd frames
enum class TransformKind : std::uint8_t {
  stft = 0,
  fostft = 1,
  fustft_i = 2,
  fustft_ii = 3,
  fustft_iii = 4,
};

inline bool is_undersampled(TransformKind k) {
  return k == TransformKind::fustft_i || k == TransformKind::fustft_ii ||
         k == TransformKind::fustft_iii;
}

inline const char* to_string(TransformKind k) {
  switch (k) {
    case TransformKind::stft: return "stft";
    case TransformKind::fostft: return "fostft";
    case TransformKind::fustft_i: return "fustft-i";
    case TransformKind::fustft_ii: return "fustft-ii";
    case TransformKind::fustft_iii: return "fustft-iii";
  }
  return "?";
}

struct TransformConfig {
  std::size_t frame_length = 0;  // L_w, samples per frame
  std::size_t shift = 0;         // hop between consecutive frames
  TransformKind kind = TransformKind::stft;
  std::size_t zero_pad = 0;  // extra bins, fostft only

  // Throws std::invalid_argument on any constraint violation.
  void validate() const {
    if (frame_length < 2)
      throw std::invalid_argument("config: frame length must be >= 2");
    if (shift < 1 || shift > frame_length)
      throw std::invalid_argument("config: shift must be in [1, frame length]");
    if (kind == TransformKind::fostft) {
      if (zero_pad < 1)
        throw std::invalid_argument("config: fostft needs a positive zero pad");
    } else if (zero_pad != 0) {
      throw std::invalid_argument("config: zero pad only applies to fostft");
    }
    if (is_undersampled(kind)) {
      if (frame_length % 4 != 0)
        throw std::invalid_argument(
            "config: undersampled kinds need a frame length divisible by 4");
      if (shift > frame_length / 2)
        throw std::invalid_argument(
            "config: undersampled kinds need shift <= frame length / 2");
    }
  }

  std::size_t bins() const {
    switch (kind) {
      case TransformKind::stft: return frame_length;
      case TransformKind::fostft: return frame_length + zero_pad;
      default: return frame_length / 2;
    }
  }
};

struct Signal {
  std::vector<cdouble> samples;
  double sample_rate = 0.0;  // Hz; 0 means unknown
  bool is_real = false;      // true when every sample has zero imaginary part

  std::size_t size() const { return samples.size(); }
};

inline Signal make_real_signal(std::vector<double> x, double sample_rate = 0.0) {
  Signal s;
  s.samples.reserve(x.size());
  for (double v : x) s.samples.emplace_back(v, 0.0);
  s.sample_rate = sample_rate;
  s.is_real = true;
  return s;
}

struct Spectrogram {
  std::size_t bins = 0;
  std::size_t frames = 0;
  // Column-major: entry (bin k, frame l) lives at data[l * bins + k].
  std::vector<cdouble> data;
  TransformConfig config;
  std::size_t signal_length = 0;  // length of the signal the transform ran over
  double sample_rate = 0.0;
  bool source_is_real = false;

  cdouble& at(std::size_t k, std::size_t l) { return data[l * bins + k]; }
  const cdouble& at(std::size_t k, std::size_t l) const { return data[l * bins + k]; }
};

}  // namespace fustft
