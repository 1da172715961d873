#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "fustft/normal_eq.hpp"
#include "fustft/solvers.hpp"
#include "fustft/transforms.hpp"
#include "fustft/types.hpp"
#include "fustft/window.hpp"

namespace fustft {

enum class InversionMode { standard, periodic };

// general: per-bin Thomas elimination, always applicable.
// fast: DST / circulant diagonalization, needs (anti)constant coefficients.
// automatic: fast whenever applicable and safely conditioned, else general.
enum class SolverPath { general, fast, automatic };

struct InversionOptions {
  SolverPath path = SolverPath::automatic;
};

struct InversionDiagnostics {
  // max/min eigenvalue of the normal-equation systems across all bins, when
  // the coefficient structure makes it cheap to evaluate (NaN otherwise).
  double condition_number = std::numeric_limits<double>::quiet_NaN();
  bool ill_conditioned = false;  // shift == frame_length/2 and condition > 1e8
  bool used_fast_path = false;
  // Relative norm of the imaginary part discarded when the source signal was
  // real; values above 1e-9 set the warning flag.
  double imaginary_residue = std::numeric_limits<double>::quiet_NaN();
  bool imaginary_warning = false;
};

struct ConsistencyMetrics {
  double full_residual = std::numeric_limits<double>::quiet_NaN();
  double interior_residual = std::numeric_limits<double>::quiet_NaN();
  double signal_error = std::numeric_limits<double>::quiet_NaN();
};

namespace detail {

inline void realize_if_source_real(const Spectrogram& X, Signal& out,
                                   InversionDiagnostics* diag) {
  if (!X.source_is_real) return;
  double imag_sq = 0.0;
  double total_sq = 0.0;
  for (const cdouble& v : out.samples) {
    imag_sq += v.imag() * v.imag();
    total_sq += std::norm(v);
  }
  const double residue = total_sq > 0.0 ? std::sqrt(imag_sq / total_sq) : 0.0;
  if (diag != nullptr) {
    diag->imaginary_residue = residue;
    diag->imaginary_warning = residue > 1e-9;
  }
  for (cdouble& v : out.samples) v = cdouble(v.real(), 0.0);
  out.is_real = true;
}

// Coefficients constant along every per-bin chain.
inline bool constant_coefficients(const TransformConfig& cfg) {
  const std::size_t half = cfg.frame_length / 2;
  if (cfg.kind == TransformKind::fustft_iii) return half % (2 * cfg.shift) == 0;
  return half % cfg.shift == 0;
}

// Kind iii chains whose coupling flips sign every step but is otherwise
// constant; handled by the similarity-transformed fast path.
inline bool alternating_coefficients(const TransformConfig& cfg) {
  const std::size_t half = cfg.frame_length / 2;
  return cfg.kind == TransformKind::fustft_iii && half % cfg.shift == 0 &&
         half % (2 * cfg.shift) != 0;
}

// Conservative bound max(a + 2|b|) / min(a - 2|b|) used only to decide
// whether the automatic path may take the fast route.
inline double condition_bound(const NormalCoefficients& nc) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  const std::size_t period = std::max(nc.a.size(), nc.b.size());
  for (std::size_t i = 0; i < period; ++i) {
    lo = std::min(lo, nc.a_at(i) - 2.0 * std::abs(nc.b_at(i)));
    hi = std::max(hi, nc.a_at(i) + 2.0 * std::abs(nc.b_at(i)));
  }
  if (!(lo > 0.0)) return std::numeric_limits<double>::infinity();
  return hi / lo;
}

// Exact eigenvalue range of one constant-coefficient chain, accumulated into
// [lo, hi]. Open chains: a + 2 c cos((q+1) pi / (n+1)) with real c. Cyclic
// chains: a + 2 Re(c e^{i 2 pi q / n}).
inline void accumulate_eigen_range(double a, cdouble c, std::size_t n, bool periodic, double& lo,
                                   double& hi) {
  for (std::size_t q = 0; q < n; ++q) {
    double lambda;
    if (periodic) {
      const double theta = 2.0 * std::numbers::pi * static_cast<double>(q) / static_cast<double>(n);
      lambda = a + 2.0 * (c * std::polar(1.0, theta)).real();
    } else {
      const double theta =
          static_cast<double>(q + 1) * std::numbers::pi / static_cast<double>(n + 1);
      lambda = a + 2.0 * c.real() * std::cos(theta);
    }
    lo = std::min(lo, lambda);
    hi = std::max(hi, lambda);
  }
}

struct PathChoice {
  bool fast = false;
  bool eligible = false;
  bool alternating = false;
};

inline PathChoice choose_path(const TransformConfig& cfg, const NormalCoefficients& nc,
                              SolverPath requested) {
  PathChoice choice;
  choice.alternating = alternating_coefficients(cfg);
  choice.eligible = constant_coefficients(cfg) || choice.alternating;
  switch (requested) {
    case SolverPath::general:
      break;
    case SolverPath::fast:
      if (!choice.eligible)
        throw std::invalid_argument(
            "fast solver path needs half the frame length divisible by the shift");
      choice.fast = true;
      break;
    case SolverPath::automatic:
      choice.fast = choice.eligible && condition_bound(nc) < 1e8;
      break;
  }
  return choice;
}

inline void check_spectrogram(const Spectrogram& X, const Window& w) {
  X.config.validate();
  require_transform_window(w, X.config);
  if (X.bins != X.config.bins()) throw std::invalid_argument("inversion: bin count mismatch");
  if (X.data.size() != X.bins * X.frames)
    throw std::invalid_argument("inversion: payload size mismatch");
}

}  // namespace detail

// Inverse for the non-undersampled kinds, where the Gram matrix is diagonal:
// x[t] = (S^H X)[t] / d[mod(t, shift)]. Standard and periodic modes agree
// for out-of-range spectrograms as well; both are exposed for that check.
inline Signal istft_painless(const Spectrogram& X, const Window& w,
                             InversionMode mode = InversionMode::standard,
                             InversionDiagnostics* diagnostics = nullptr) {
  detail::check_spectrogram(X, w);
  const TransformConfig& cfg = X.config;
  if (is_undersampled(cfg.kind))
    throw std::invalid_argument("painless inverse applies to stft/fostft only");
  const std::size_t signal_length = X.signal_length;
  if (X.frames != frame_count(signal_length, cfg))
    throw std::invalid_argument("inversion: frame count mismatch");

  const std::vector<double> d = gram_diagonal_period(w, cfg.shift, cfg.bins());
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (double v : d) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (!(lo > 0.0))
    throw numerical_error("painless inverse: window/shift combination leaves a coverage gap");

  Signal out;
  if (mode == InversionMode::standard) {
    out = adjoint(X, w);
    for (std::size_t t = 0; t < out.samples.size(); ++t) out.samples[t] /= d[t % cfg.shift];
  } else {
    const PeriodicExtension ext = periodic_extension(signal_length, cfg);
    Spectrogram padded = X;
    padded.frames = X.frames + ext.pad_frames;
    padded.data.resize(padded.bins * padded.frames, cdouble{});
    padded.signal_length = ext.padded_length;
    Signal y = adjoint_periodic(padded, w);
    for (std::size_t t = 0; t < y.samples.size(); ++t) y.samples[t] /= d[t % cfg.shift];
    y.samples.resize(signal_length);
    out = std::move(y);
  }
  out.sample_rate = X.sample_rate;
  if (diagnostics != nullptr) {
    *diagnostics = InversionDiagnostics{};
    diagnostics->condition_number = hi / lo;
  }
  detail::realize_if_source_real(X, out, diagnostics);
  return out;
}

// Least-squares inverse of an undersampled transform: adjoint followed by
// one symmetric tridiagonal solve per frequency residue i, coupling the
// samples x[i + j L_w/2].
inline Signal ifustft_standard(const Spectrogram& X, const Window& w,
                               const InversionOptions& options = {},
                               InversionDiagnostics* diagnostics = nullptr) {
  detail::check_spectrogram(X, w);
  const TransformConfig& cfg = X.config;
  if (!is_undersampled(cfg.kind))
    throw std::invalid_argument("least-squares inverse applies to undersampled kinds only");
  const std::size_t signal_length = X.signal_length;
  if (X.frames != frame_count(signal_length, cfg))
    throw std::invalid_argument("inversion: frame count mismatch");

  const Signal y = adjoint(X, w);
  const NormalCoefficients nc = compute_normal_coefficients(w, cfg.shift, cfg.kind);
  const std::size_t half = cfg.frame_length / 2;
  const detail::PathChoice path = detail::choose_path(cfg, nc, options.path);

  Signal out;
  out.samples.assign(signal_length, cdouble{});
  out.sample_rate = X.sample_rate;

  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (std::size_t i = 0; i < half; ++i) {
    const std::size_t n = (signal_length - i + half - 1) / half;
    BinSystem sys;
    sys.diag.resize(n);
    sys.offdiag.resize(n - 1);
    sys.rhs.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t t = i + j * half;
      sys.diag[j] = nc.a_at(t);
      sys.rhs[j] = y.samples[t];
      if (j + 1 < n) sys.offdiag[j] = nc.b_at(t);
    }
    std::vector<cdouble> x;
    try {
      if (!path.fast) {
        x = solve_tridiagonal(sys);
      } else if (path.alternating) {
        x = solve_alternating_fast(sys);
      } else {
        const double coupling = sys.offdiag.empty() ? 0.0 : sys.offdiag[0];
        x = solve_toeplitz_dst(sys.diag[0], coupling, sys.rhs);
      }
    } catch (const numerical_error& e) {
      throw numerical_error("bin " + std::to_string(i) + ": " + e.what());
    }
    for (std::size_t j = 0; j < n; ++j) out.samples[i + j * half] = x[j];
    if (path.eligible)
      detail::accumulate_eigen_range(nc.a_at(i), std::abs(nc.b_at(i)), n, false, lo, hi);
  }

  if (diagnostics != nullptr) {
    *diagnostics = InversionDiagnostics{};
    diagnostics->used_fast_path = path.fast;
    if (path.eligible && lo > 0.0) {
      diagnostics->condition_number = hi / lo;
      diagnostics->ill_conditioned =
          cfg.shift == half && diagnostics->condition_number > 1e8;
    }
  }
  detail::realize_if_source_real(X, out, diagnostics);
  return out;
}

// Periodicity-assuming least-squares inverse: the spectrogram is padded with
// zero frames until the padded length divides into whole half-frames, the
// per-bin systems become cyclic and uniform, and the reconstruction is
// truncated back to the original length.
inline Signal ifustft_periodic(const Spectrogram& X, const Window& w,
                               const InversionOptions& options = {},
                               InversionDiagnostics* diagnostics = nullptr) {
  detail::check_spectrogram(X, w);
  const TransformConfig& cfg = X.config;
  if (!is_undersampled(cfg.kind))
    throw std::invalid_argument("least-squares inverse applies to undersampled kinds only");
  const std::size_t signal_length = X.signal_length;
  if (X.frames != frame_count(signal_length, cfg))
    throw std::invalid_argument("inversion: frame count mismatch");

  const PeriodicExtension ext = periodic_extension(signal_length, cfg);
  Spectrogram padded = X;
  padded.frames = X.frames + ext.pad_frames;
  padded.data.resize(padded.bins * padded.frames, cdouble{});
  padded.signal_length = ext.padded_length;

  const Signal y = adjoint_periodic(padded, w);
  const NormalCoefficients nc = compute_normal_coefficients(w, cfg.shift, cfg.kind);
  const std::size_t half = cfg.frame_length / 2;
  const std::size_t n = ext.padded_length / half;
  const detail::PathChoice path = detail::choose_path(cfg, nc, options.path);

  std::vector<cdouble> recovered(ext.padded_length);
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (std::size_t i = 0; i < half; ++i) {
    BinSystem sys;
    sys.periodic = true;
    sys.diag.resize(n);
    sys.offdiag.resize(n);
    sys.rhs.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t t = i + j * half;
      sys.diag[j] = nc.a_at(t);
      sys.rhs[j] = y.samples[t];
      sys.offdiag[j] = nc.b_at(t);
    }
    std::vector<cdouble> x;
    try {
      if (!path.fast) {
        x = solve_periodic_tridiagonal(sys);
      } else if (path.alternating) {
        x = solve_alternating_fast(sys);
      } else {
        x = solve_circulant_fft(sys.diag[0], sys.offdiag[0], sys.rhs);
      }
    } catch (const numerical_error& e) {
      throw numerical_error("bin " + std::to_string(i) + ": " + e.what());
    }
    for (std::size_t j = 0; j < n; ++j) recovered[i + j * half] = x[j];
    if (path.eligible) {
      const cdouble coupling = path.alternating ? cdouble(0.0, 1.0) * nc.b_at(i) : nc.b_at(i);
      detail::accumulate_eigen_range(nc.a_at(i), coupling, n, true, lo, hi);
    }
  }

  Signal out;
  recovered.resize(signal_length);
  out.samples = std::move(recovered);
  out.sample_rate = X.sample_rate;

  if (diagnostics != nullptr) {
    *diagnostics = InversionDiagnostics{};
    diagnostics->used_fast_path = path.fast;
    if (path.eligible && lo > 0.0) {
      diagnostics->condition_number = hi / lo;
      diagnostics->ill_conditioned =
          cfg.shift == half && diagnostics->condition_number > 1e8;
    }
  }
  detail::realize_if_source_real(X, out, diagnostics);
  return out;
}

// Relative Frobenius mismatch between X and the re-analysis of xhat, over all
// frames and over the interior frames only (the first ceil((L_w - shift)/
// shift) frames read leading zero padding and the last frames past
// floor(L_x / shift) read trailing padding; both are excluded, in numerator
// and denominator, for the interior variant). signal_error is filled when a
// reference signal is supplied. Zero-norm denominators yield NaN.
inline ConsistencyMetrics consistency_metrics(const Spectrogram& X, const Signal& xhat,
                                              const Window& w,
                                              const Signal* reference = nullptr) {
  detail::check_spectrogram(X, w);
  if (xhat.size() != X.signal_length)
    throw std::invalid_argument("metrics: reconstruction length mismatch");
  const Spectrogram re = forward(xhat, w, X.config);

  const std::size_t head = (X.config.frame_length - 1) / X.config.shift;
  const std::size_t tail = X.frames - X.signal_length / X.config.shift;
  const std::size_t interior_end = X.frames - tail;

  double num_full = 0.0, den_full = 0.0, num_int = 0.0, den_int = 0.0;
  for (std::size_t l = 0; l < X.frames; ++l) {
    double num_col = 0.0, den_col = 0.0;
    for (std::size_t k = 0; k < X.bins; ++k) {
      num_col += std::norm(X.at(k, l) - re.at(k, l));
      den_col += std::norm(X.at(k, l));
    }
    num_full += num_col;
    den_full += den_col;
    if (l >= head && l < interior_end) {
      num_int += num_col;
      den_int += den_col;
    }
  }

  ConsistencyMetrics m;
  if (den_full > 0.0) m.full_residual = std::sqrt(num_full / den_full);
  if (den_int > 0.0) m.interior_residual = std::sqrt(num_int / den_int);
  if (reference != nullptr && reference->size() == xhat.size()) {
    double num = 0.0, den = 0.0;
    for (std::size_t t = 0; t < xhat.size(); ++t) {
      num += std::norm(reference->samples[t] - xhat.samples[t]);
      den += std::norm(reference->samples[t]);
    }
    if (den > 0.0) m.signal_error = std::sqrt(num / den);
  }
  return m;
}

}  // namespace fustft
