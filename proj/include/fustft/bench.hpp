#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <numbers>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "fustft/binary_io.hpp"
#include "fustft/errors.hpp"
#include "fustft/inversion.hpp"
#include "fustft/transforms.hpp"
#include "fustft/types.hpp"
#include "fustft/window.hpp"

namespace fustft {

struct BenchConfig {
  std::vector<std::size_t> frame_lengths = {2048, 8192};
  std::vector<std::size_t> shift_divisors = {2, 8};  // shift = frame_length / divisor
  double noise_variance = 1e-6;
  TransformKind kind = TransformKind::fustft_ii;
  WindowKind window = WindowKind::hann;
  std::uint64_t seed = 0x5eed;
};

struct BenchRow {
  std::size_t frame_length = 0;
  std::size_t shift = 0;
  InversionMode mode = InversionMode::standard;
  bool noisy = false;
  ConsistencyMetrics metrics;
};

// Round-trip error study over a grid of (frame length, shift): reconstructs
// both from the exact spectrogram and from one perturbed by complex white
// noise of the configured variance, reporting signal error plus full and
// interior re-analysis residuals. A zero noise variance makes the noisy rows
// coincide with the exact ones.
inline std::vector<BenchRow> run_bench(const Signal& x, const BenchConfig& bench) {
  if (!is_undersampled(bench.kind))
    throw std::invalid_argument("bench: undersampled kinds only");
  std::mt19937_64 rng(bench.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<BenchRow> rows;

  for (std::size_t frame_length : bench.frame_lengths) {
    if (x.size() <= frame_length)
      throw data_error("bench: input shorter than frame length " + std::to_string(frame_length));
    const Window w = bench.window == WindowKind::sine ? make_sine_window(frame_length)
                                                      : make_hann_window(frame_length);
    for (std::size_t divisor : bench.shift_divisors) {
      if (divisor == 0 || frame_length % divisor != 0)
        throw std::invalid_argument("bench: frame length not divisible by shift divisor");
      TransformConfig cfg;
      cfg.frame_length = frame_length;
      cfg.shift = frame_length / divisor;
      cfg.kind = bench.kind;
      cfg.validate();

      const Spectrogram X = forward(x, w, cfg);
      Spectrogram noisy = X;
      const double sigma = std::sqrt(bench.noise_variance / 2.0);
      for (cdouble& v : noisy.data) v += cdouble(sigma * gauss(rng), sigma * gauss(rng));

      const Spectrogram* inputs[] = {&X, &noisy};
      for (int which = 0; which < 2; ++which) {
        const Spectrogram& in = *inputs[which];
        for (InversionMode mode : {InversionMode::standard, InversionMode::periodic}) {
          const Signal xhat = mode == InversionMode::standard ? ifustft_standard(in, w)
                                                              : ifustft_periodic(in, w);
          BenchRow row;
          row.frame_length = frame_length;
          row.shift = cfg.shift;
          row.mode = mode;
          row.noisy = which == 1;
          row.metrics = consistency_metrics(in, xhat, w, &x);
          rows.push_back(row);
        }
      }
    }
  }
  return rows;
}

inline void write_bench_csv(const std::filesystem::path& path,
                            const std::vector<BenchRow>& rows) {
  detail::atomic_write(path, [&](std::ostream& out) {
    out << "frame_length,shift,inverse,input,signal_error,full_residual,interior_residual\n";
    for (const BenchRow& r : rows) {
      out << r.frame_length << ',' << r.shift << ','
          << (r.mode == InversionMode::standard ? "standard" : "periodic") << ','
          << (r.noisy ? "noisy" : "exact") << ',' << detail::g17(r.metrics.signal_error) << ','
          << detail::g17(r.metrics.full_residual) << ','
          << detail::g17(r.metrics.interior_residual) << '\n';
    }
  });
}

// Deterministic voiced-speech stand-in: a harmonic stack with a slowly
// wandering fundamental, gated into syllable-like bursts, plus faint breath
// noise. RMS is normalized to 0.1.
inline Signal make_synthetic_voice(double seconds, double sample_rate, std::uint64_t seed) {
  if (!(seconds > 0.0) || !(sample_rate > 0.0))
    throw std::invalid_argument("synthetic voice: duration and rate must be positive");
  const auto n = static_cast<std::size_t>(seconds * sample_rate);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  constexpr int harmonics = 12;
  std::vector<double> phase(harmonics, 0.0);
  std::vector<double> out(n);
  const double dt = 1.0 / sample_rate;
  for (std::size_t t = 0; t < n; ++t) {
    const double time = static_cast<double>(t) * dt;
    const double f0 = 115.0 + 25.0 * std::sin(2.0 * std::numbers::pi * 0.45 * time);
    const double syllable = std::sin(2.0 * std::numbers::pi * 2.2 * time);
    const double gate = std::pow(std::max(0.0, (syllable - 0.15) / 0.85), 2.0);
    double v = 0.0;
    for (int h = 0; h < harmonics; ++h) {
      phase[h] += 2.0 * std::numbers::pi * f0 * (h + 1) * dt;
      v += std::sin(phase[h]) / static_cast<double>(h + 1);
    }
    out[t] = gate * v + 0.02 * gauss(rng);
  }

  double rms = 0.0;
  for (double v : out) rms += v * v;
  rms = std::sqrt(rms / static_cast<double>(n));
  const double scale = rms > 0.0 ? 0.1 / rms : 1.0;
  for (double& v : out) v *= scale;
  return make_real_signal(std::move(out), sample_rate);
}

}  // namespace fustft
