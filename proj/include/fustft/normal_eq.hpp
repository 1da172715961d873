#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "fustft/transforms.hpp"
#include "fustft/types.hpp"
#include "fustft/window.hpp"

namespace fustft {

// One period (= shift) of the Gram diagonal of a transform with `bins` bins:
// entry i collects bins * sum of w^2 over the window samples congruent to
// mod(i + L_w, shift). Periodic in i with period shift, so one cycle is all
// that is ever stored.
inline std::vector<double> gram_diagonal_period(const Window& w, std::size_t shift,
                                                std::size_t bins) {
  const std::size_t length = w.size();
  if (shift < 1 || shift > length)
    throw std::invalid_argument("gram diagonal: shift must be in [1, window length]");
  std::vector<double> a(shift, 0.0);
  for (std::size_t i = 0; i < shift; ++i) {
    const std::size_t m = (i + length) % shift;
    double sum = 0.0;
    for (std::size_t tau = m; tau < length; tau += shift) sum += w[tau] * w[tau];
    a[i] = static_cast<double>(bins) * sum;
  }
  return a;
}

// Diagonal coefficients a_i of the undersampled normal equations (bin factor
// L_w / 2). Period shift.
inline std::vector<double> compute_a(const Window& w, std::size_t shift) {
  return gram_diagonal_period(w, shift, w.size() / 2);
}

// Off-diagonal coefficients b_i coupling samples a half frame apart.
// Period shift for kinds i/ii (kind ii is the negation of kind i); period
// 2 * shift for kind iii, whose frame-parity alternation contributes the
// extra sign (-1)^{floor((i + L_w - shift)/shift) + l} to each summand.
inline std::vector<double> compute_b(const Window& w, std::size_t shift, TransformKind kind) {
  if (!is_undersampled(kind))
    throw std::invalid_argument("off-diagonal coefficients exist only for undersampled kinds");
  const std::size_t length = w.size();
  const std::size_t half = length / 2;
  if (length % 4 != 0)
    throw std::invalid_argument("off-diagonal coefficients need a frame length divisible by 4");
  if (shift < 1 || shift > half)
    throw std::invalid_argument("off-diagonal coefficients need shift <= half the frame length");
  const std::size_t period = (kind == TransformKind::fustft_iii) ? 2 * shift : shift;
  std::vector<double> b(period, 0.0);
  for (std::size_t i = 0; i < period; ++i) {
    const std::size_t m = (i + length) % shift;
    double sum = 0.0;
    std::size_t l = 0;
    for (std::size_t tau = m; tau + half < length; tau += shift, ++l) {
      double term = w[tau] * w[tau + half];
      if (kind == TransformKind::fustft_iii && ((i + length - shift) / shift + l) % 2 == 1)
        term = -term;
      sum += term;
    }
    b[i] = static_cast<double>(half) * sum;
    if (kind == TransformKind::fustft_ii) b[i] = -b[i];
  }
  return b;
}

struct NormalCoefficients {
  std::vector<double> a;  // period = shift
  std::vector<double> b;  // period = shift (kinds i/ii) or 2 * shift (kind iii)
  TransformKind kind = TransformKind::fustft_i;
  std::size_t shift = 0;

  double a_at(std::size_t i) const { return a[i % a.size()]; }
  double b_at(std::size_t i) const { return b[i % b.size()]; }
};

// Computed once per (window, shift, kind) and shared read-only across all
// per-bin solves of an inversion.
inline NormalCoefficients compute_normal_coefficients(const Window& w, std::size_t shift,
                                                      TransformKind kind) {
  NormalCoefficients c;
  c.a = compute_a(w, shift);
  c.b = compute_b(w, shift, kind);
  c.kind = kind;
  c.shift = shift;
  return c;
}

struct PeriodicExtension {
  std::size_t pad_frames = 0;     // frames of zeros appended
  std::size_t padded_length = 0;  // (frames + pad_frames) * shift
};

// Smallest number of zero frames making the padded length a multiple of
// half the frame length (and the frame count even for kind iii), which is
// what lets the periodic Gram matrix split into per-bin cyclic systems.
// For stft/fostft no padding is needed.
inline PeriodicExtension periodic_extension(std::size_t signal_length,
                                            const TransformConfig& cfg) {
  const std::size_t frames = frame_count(signal_length, cfg);
  if (!is_undersampled(cfg.kind)) return {0, frames * cfg.shift};
  const std::size_t half = cfg.frame_length / 2;
  for (std::size_t p = 0;; ++p) {
    const std::size_t padded = (frames + p) * cfg.shift;
    if (padded % half != 0) continue;
    if (cfg.kind == TransformKind::fustft_iii && (frames + p) % 2 != 0) continue;
    return {p, padded};
  }
}

}  // namespace fustft
