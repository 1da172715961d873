#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <numbers>
#include <stdexcept>

#include "fustft/transforms.hpp"
#include "fustft/types.hpp"
#include "fustft/window.hpp"

// Dense reference implementations, spelled out entry by entry from the
// transform definitions rather than routed through the FFT code paths. They
// exist to pin down the structured algorithms in tests and are restricted to
// small instances.
namespace fustft::oracle {

struct DenseOperator {
  // (bins * frames) x length; the row for (bin k, frame l) is k * frames + l.
  Eigen::MatrixXcd matrix;
  std::size_t bins = 0;
  std::size_t frames = 0;
  bool periodic = false;
};

inline DenseOperator assemble_dense(const TransformConfig& cfg, const Window& w,
                                    std::size_t length, bool periodic) {
  cfg.validate();
  if (w.size() != cfg.frame_length)
    throw std::invalid_argument("dense oracle: window length mismatch");
  if (length > 256)
    throw std::invalid_argument("dense oracle: restricted to lengths <= 256");

  std::size_t frames;
  if (periodic) {
    if (length == 0 || length % cfg.shift != 0)
      throw std::invalid_argument("dense oracle: periodic length must be a multiple of shift");
    frames = length / cfg.shift;
  } else {
    frames = frame_count(length, cfg);
  }

  const std::size_t bins = cfg.bins();
  const std::size_t window_length = cfg.frame_length;
  DenseOperator op;
  op.bins = bins;
  op.frames = frames;
  op.periodic = periodic;
  op.matrix = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(bins * frames),
                                     static_cast<Eigen::Index>(length));

  for (std::size_t l = 0; l < frames; ++l) {
    for (std::size_t k = 0; k < bins; ++k) {
      const Eigen::Index row = static_cast<Eigen::Index>(k * frames + l);
      for (std::size_t tau = 0; tau < window_length; ++tau) {
        const std::ptrdiff_t t = static_cast<std::ptrdiff_t>(l * cfg.shift + cfg.shift + tau) -
                                 static_cast<std::ptrdiff_t>(window_length);
        std::ptrdiff_t col = t;
        if (periodic) {
          const auto p = static_cast<std::ptrdiff_t>(length);
          col = ((t % p) + p) % p;
        } else if (t < 0 || t >= static_cast<std::ptrdiff_t>(length)) {
          continue;
        }
        double numerator;  // frequency-grid multiplier applied to tau
        switch (cfg.kind) {
          case TransformKind::stft:
            numerator = static_cast<double>(k) / static_cast<double>(window_length);
            break;
          case TransformKind::fostft:
            numerator = static_cast<double>(k) / static_cast<double>(window_length + cfg.zero_pad);
            break;
          case TransformKind::fustft_i:
            numerator = static_cast<double>(2 * k) / static_cast<double>(window_length);
            break;
          case TransformKind::fustft_ii:
            numerator = static_cast<double>(2 * k + 1) / static_cast<double>(window_length);
            break;
          case TransformKind::fustft_iii:
            numerator = static_cast<double>(l % 2 == 0 ? 2 * k : 2 * k + 1) /
                        static_cast<double>(window_length);
            break;
          default:
            throw std::invalid_argument("dense oracle: unknown kind");
        }
        const double angle = -2.0 * std::numbers::pi * numerator * static_cast<double>(tau);
        op.matrix(row, col) += w[tau] * std::polar(1.0, angle);
      }
    }
  }
  return op;
}

// Spectrogram entries stacked to match the dense operator's row order.
inline Eigen::VectorXcd stack(const Spectrogram& X) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(X.bins * X.frames));
  for (std::size_t k = 0; k < X.bins; ++k)
    for (std::size_t l = 0; l < X.frames; ++l)
      v(static_cast<Eigen::Index>(k * X.frames + l)) = X.at(k, l);
  return v;
}

struct LeastSquaresResult {
  Eigen::VectorXcd solution;
  Eigen::Index rank = 0;
  bool rank_deficient = false;
};

// Minimum-norm least squares via a complete orthogonal decomposition.
inline LeastSquaresResult dense_least_squares(const DenseOperator& op,
                                              const Eigen::VectorXcd& target) {
  if (target.size() != op.matrix.rows())
    throw std::invalid_argument("dense oracle: target size mismatch");
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod;
  cod.setThreshold(1e-10);
  cod.compute(op.matrix);
  LeastSquaresResult r;
  r.solution = cod.solve(target);
  r.rank = cod.rank();
  r.rank_deficient = r.rank < op.matrix.cols();
  return r;
}

}  // namespace fustft::oracle
