#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

namespace fustft {

enum class WindowKind { sine, hann, custom };

// Where the discrete samples sit on the continuous window curve. The
// factories here sample at half points, w[t] = w((t + 1/2) * Ts), which keeps
// every sample strictly inside the support and makes the sample vector
// symmetric bit-for-bit. Whole-point sampling is provided only so the
// degenerate behaviour it causes can be demonstrated; the transforms reject
// it.
enum class WindowSampling { half_point_even, whole_point_even };

struct Window {
  std::vector<double> samples;
  WindowKind kind = WindowKind::custom;
  WindowSampling sampling = WindowSampling::half_point_even;

  std::size_t size() const { return samples.size(); }
  double operator[](std::size_t t) const { return samples[t]; }

  bool is_rectangular() const {
    if (samples.empty()) return false;
    auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
    return *lo == *hi;
  }
};

// w[t] = sin((t + 1/2) * pi / L) / sqrt(L). Unit energy up to rounding.
inline Window make_sine_window(std::size_t frame_length) {
  if (frame_length < 2) throw std::invalid_argument("sine window: length must be >= 2");
  Window w;
  w.kind = WindowKind::sine;
  w.samples.resize(frame_length);
  const double length = static_cast<double>(frame_length);
  const double norm = 1.0 / std::sqrt(length);
  for (std::size_t t = 0; t < (frame_length + 1) / 2; ++t) {
    const double v = norm * std::sin((static_cast<double>(t) + 0.5) * std::numbers::pi / length);
    w.samples[t] = v;
    w.samples[frame_length - 1 - t] = v;
  }
  return w;
}

// w[t] = (1 - cos(2 (t + 1/2) pi / L)) / (2 sqrt(L)).
inline Window make_hann_window(std::size_t frame_length) {
  if (frame_length < 2) throw std::invalid_argument("hann window: length must be >= 2");
  Window w;
  w.kind = WindowKind::hann;
  w.samples.resize(frame_length);
  const double length = static_cast<double>(frame_length);
  const double norm = 1.0 / (2.0 * std::sqrt(length));
  for (std::size_t t = 0; t < (frame_length + 1) / 2; ++t) {
    const double v =
        norm * (1.0 - std::cos(2.0 * (static_cast<double>(t) + 0.5) * std::numbers::pi / length));
    w.samples[t] = v;
    w.samples[frame_length - 1 - t] = v;
  }
  return w;
}

// Caller-supplied samples. Must be strictly positive and symmetric
// (samples[t] == samples[L-1-t] within 1e-12 relative to the peak).
inline Window make_custom_window(std::vector<double> samples) {
  if (samples.size() < 2) throw std::invalid_argument("custom window: length must be >= 2");
  double peak = 0.0;
  for (double v : samples) {
    if (!(v > 0.0)) throw std::invalid_argument("custom window: samples must be strictly positive");
    peak = std::max(peak, std::abs(v));
  }
  const std::size_t n = samples.size();
  for (std::size_t t = 0; t < n / 2; ++t) {
    if (std::abs(samples[t] - samples[n - 1 - t]) > 1e-12 * peak)
      throw std::invalid_argument("custom window: samples must be symmetric");
  }
  Window w;
  w.kind = WindowKind::custom;
  w.samples = std::move(samples);
  return w;
}

// w[t] = sin(t * pi / L) / sqrt(L). Starts at an exact zero; diagnostic use
// only (shows how whole-point sampling breaks invertibility at shift = L/2).
inline Window make_whole_point_even_sine_window(std::size_t frame_length) {
  if (frame_length < 2) throw std::invalid_argument("sine window: length must be >= 2");
  Window w;
  w.kind = WindowKind::sine;
  w.sampling = WindowSampling::whole_point_even;
  w.samples.resize(frame_length);
  const double length = static_cast<double>(frame_length);
  const double norm = 1.0 / std::sqrt(length);
  for (std::size_t t = 0; t < frame_length; ++t)
    w.samples[t] = norm * std::sin(static_cast<double>(t) * std::numbers::pi / length);
  return w;
}

}  // namespace fustft
