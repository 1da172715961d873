#pragma once

#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "fustft/fft.hpp"
#include "fustft/types.hpp"
#include "fustft/window.hpp"

namespace fustft {

// Number of frames covering a length-L_x signal: the frame hop starts at
// shift - L_w (so L_w - shift leading samples of the first frame read zeros)
// and frames are emitted until the whole signal is consumed.
inline std::size_t frame_count(std::size_t signal_length, const TransformConfig& cfg) {
  cfg.validate();
  if (signal_length <= cfg.frame_length)
    throw std::invalid_argument("signal must be longer than one frame");
  return (signal_length + cfg.frame_length - 1) / cfg.shift;
}

// One frame of x, zero-padded outside [0, L_x), without the window applied.
inline std::vector<cdouble> extract_frame(const Signal& x, std::size_t frame,
                                          const TransformConfig& cfg) {
  const std::size_t total = frame_count(x.size(), cfg);
  if (frame >= total) throw std::invalid_argument("frame index out of range");
  std::vector<cdouble> out(cfg.frame_length);
  const std::ptrdiff_t base = static_cast<std::ptrdiff_t>(frame * cfg.shift + cfg.shift) -
                              static_cast<std::ptrdiff_t>(cfg.frame_length);
  const auto n = static_cast<std::ptrdiff_t>(x.size());
  for (std::size_t tau = 0; tau < cfg.frame_length; ++tau) {
    const std::ptrdiff_t t = base + static_cast<std::ptrdiff_t>(tau);
    out[tau] = (t >= 0 && t < n) ? x.samples[static_cast<std::size_t>(t)] : cdouble{};
  }
  return out;
}

namespace detail {

inline void require_transform_window(const Window& w, const TransformConfig& cfg) {
  if (w.size() != cfg.frame_length)
    throw std::invalid_argument("window length must equal the frame length");
  if (w.sampling != WindowSampling::half_point_even)
    throw std::invalid_argument("transforms require half-point-even windows");
  if (is_undersampled(cfg.kind) && w.is_rectangular())
    throw std::invalid_argument("rectangular windows are not admissible for undersampled kinds");
}

inline bool odd_grid(TransformKind kind, std::size_t frame) {
  return kind == TransformKind::fustft_ii ||
         (kind == TransformKind::fustft_iii && frame % 2 == 1);
}

inline std::size_t wrap_index(std::ptrdiff_t t, std::size_t period) {
  const auto p = static_cast<std::ptrdiff_t>(period);
  return static_cast<std::size_t>(((t % p) + p) % p);
}

// e^{-i pi t / h} for t in [0, h): the modulation that turns the odd grid
// into a plain length-h DFT of the sign-folded frame.
inline std::vector<cdouble> odd_grid_twiddles(std::size_t half) {
  std::vector<cdouble> m(half);
  for (std::size_t t = 0; t < half; ++t)
    m[t] = std::polar(1.0, -std::numbers::pi * static_cast<double>(t) / static_cast<double>(half));
  return m;
}

inline Spectrogram forward_impl(const Signal& x, const Window& w, const TransformConfig& cfg,
                                std::size_t frames, bool periodic) {
  const std::size_t length = cfg.frame_length;
  const std::size_t half = length / 2;
  const std::size_t bins = cfg.bins();
  const bool undersampled = is_undersampled(cfg.kind);

  Spectrogram X;
  X.bins = bins;
  X.frames = frames;
  X.data.assign(bins * frames, cdouble{});
  X.config = cfg;
  X.signal_length = x.size();
  X.sample_rate = x.sample_rate;
  X.source_is_real = x.is_real;

  Fft fft(bins, Fft::Direction::forward);
  std::vector<cdouble> frame(length);
  std::vector<cdouble> buf(bins);
  std::vector<cdouble> twiddle;
  if (undersampled) twiddle = odd_grid_twiddles(half);

  const auto n = static_cast<std::ptrdiff_t>(x.size());
  for (std::size_t l = 0; l < frames; ++l) {
    const std::ptrdiff_t base = static_cast<std::ptrdiff_t>(l * cfg.shift + cfg.shift) -
                                static_cast<std::ptrdiff_t>(length);
    for (std::size_t tau = 0; tau < length; ++tau) {
      const std::ptrdiff_t t = base + static_cast<std::ptrdiff_t>(tau);
      cdouble v{};
      if (periodic) {
        v = x.samples[wrap_index(t, x.size())];
      } else if (t >= 0 && t < n) {
        v = x.samples[static_cast<std::size_t>(t)];
      }
      frame[tau] = v * w[tau];
    }
    if (!undersampled) {
      for (std::size_t tau = 0; tau < length; ++tau) buf[tau] = frame[tau];
      for (std::size_t tau = length; tau < bins; ++tau) buf[tau] = cdouble{};
    } else if (odd_grid(cfg.kind, l)) {
      for (std::size_t t = 0; t < half; ++t) buf[t] = (frame[t] - frame[t + half]) * twiddle[t];
    } else {
      for (std::size_t t = 0; t < half; ++t) buf[t] = frame[t] + frame[t + half];
    }
    fft.transform(buf, std::span<cdouble>(X.data.data() + l * bins, bins));
  }
  return X;
}

inline Signal adjoint_impl(const Spectrogram& X, const Window& w, std::size_t out_length,
                           bool periodic) {
  const TransformConfig& cfg = X.config;
  const std::size_t length = cfg.frame_length;
  const std::size_t half = length / 2;
  const std::size_t bins = cfg.bins();
  const bool undersampled = is_undersampled(cfg.kind);

  Signal y;
  y.samples.assign(out_length, cdouble{});
  y.sample_rate = X.sample_rate;

  Fft fft(bins, Fft::Direction::inverse);
  std::vector<cdouble> buf(bins);
  std::vector<cdouble> expanded(length);
  std::vector<cdouble> twiddle;
  if (undersampled) {
    twiddle.resize(length);
    for (std::size_t tau = 0; tau < length; ++tau)
      twiddle[tau] = std::polar(
          1.0, 2.0 * std::numbers::pi * static_cast<double>(tau) / static_cast<double>(length));
  }

  const auto n = static_cast<std::ptrdiff_t>(out_length);
  for (std::size_t l = 0; l < X.frames; ++l) {
    fft.transform(std::span<const cdouble>(X.data.data() + l * bins, bins), buf);
    if (!undersampled) {
      for (std::size_t tau = 0; tau < length; ++tau) expanded[tau] = buf[tau];
    } else if (odd_grid(cfg.kind, l)) {
      for (std::size_t tau = 0; tau < length; ++tau) expanded[tau] = buf[tau % half] * twiddle[tau];
    } else {
      for (std::size_t tau = 0; tau < length; ++tau) expanded[tau] = buf[tau % half];
    }
    const std::ptrdiff_t base = static_cast<std::ptrdiff_t>(l * cfg.shift + cfg.shift) -
                                static_cast<std::ptrdiff_t>(length);
    for (std::size_t tau = 0; tau < length; ++tau) {
      const std::ptrdiff_t t = base + static_cast<std::ptrdiff_t>(tau);
      if (periodic) {
        y.samples[wrap_index(t, out_length)] += w[tau] * expanded[tau];
      } else if (t >= 0 && t < n) {
        y.samples[static_cast<std::size_t>(t)] += w[tau] * expanded[tau];
      }
    }
  }
  return y;
}

inline void require_periodic_shape(const TransformConfig& cfg, std::size_t padded_length,
                                   std::size_t frames) {
  if (padded_length != frames * cfg.shift)
    throw std::invalid_argument("periodic transform: length must equal frames * shift");
  if (is_undersampled(cfg.kind)) {
    if (padded_length % (cfg.frame_length / 2) != 0)
      throw std::invalid_argument(
          "periodic transform: length must be a multiple of half the frame length");
    if (cfg.kind == TransformKind::fustft_iii && frames % 2 != 0)
      throw std::invalid_argument("periodic fustft-iii needs an even frame count");
  }
}

}  // namespace detail

inline Spectrogram forward(const Signal& x, const Window& w, const TransformConfig& cfg) {
  cfg.validate();
  detail::require_transform_window(w, cfg);
  return detail::forward_impl(x, w, cfg, frame_count(x.size(), cfg), false);
}

// Transform of a signal understood as one period of length x.size().
// pad_frames records how many trailing frames are padding; it is checked
// against the frame count but does not change the result.
inline Spectrogram forward_periodic(const Signal& x, const Window& w, const TransformConfig& cfg,
                                    std::size_t pad_frames = 0) {
  cfg.validate();
  detail::require_transform_window(w, cfg);
  if (x.size() == 0 || x.size() % cfg.shift != 0)
    throw std::invalid_argument("periodic transform: length must be a positive multiple of shift");
  const std::size_t frames = x.size() / cfg.shift;
  if (pad_frames >= frames)
    throw std::invalid_argument("periodic transform: pad frames must be < total frames");
  detail::require_periodic_shape(cfg, x.size(), frames);
  return detail::forward_impl(x, w, cfg, frames, true);
}

// Conjugate transpose applied to a spectrogram; output has the originating
// signal's length.
inline Signal adjoint(const Spectrogram& X, const Window& w) {
  const TransformConfig& cfg = X.config;
  cfg.validate();
  detail::require_transform_window(w, cfg);
  if (X.bins != cfg.bins()) throw std::invalid_argument("adjoint: bin count mismatch");
  if (X.frames != frame_count(X.signal_length, cfg))
    throw std::invalid_argument("adjoint: frame count mismatch");
  return detail::adjoint_impl(X, w, X.signal_length, false);
}

inline Signal adjoint_periodic(const Spectrogram& X, const Window& w) {
  const TransformConfig& cfg = X.config;
  cfg.validate();
  detail::require_transform_window(w, cfg);
  if (X.bins != cfg.bins()) throw std::invalid_argument("adjoint: bin count mismatch");
  const std::size_t padded_length = X.frames * cfg.shift;
  detail::require_periodic_shape(cfg, padded_length, X.frames);
  return detail::adjoint_impl(X, w, padded_length, true);
}

}  // namespace fustft
