#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <fustft/fustft.hpp>
#include <fustft/oracle.hpp>

namespace testutil {

using fustft::cdouble;

inline fustft::Signal random_complex_signal(std::size_t n, std::mt19937_64& rng,
                                            double scale = 1.0, double rate = 0.0) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  fustft::Signal x;
  x.samples.resize(n);
  for (cdouble& v : x.samples) v = scale * cdouble(gauss(rng), gauss(rng));
  x.sample_rate = rate;
  return x;
}

inline fustft::Spectrogram random_spectrogram(const fustft::TransformConfig& cfg,
                                              std::size_t signal_length, std::mt19937_64& rng,
                                              double scale = 1.0) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  fustft::Spectrogram X;
  X.config = cfg;
  X.bins = cfg.bins();
  X.frames = fustft::frame_count(signal_length, cfg);
  X.signal_length = signal_length;
  X.data.resize(X.bins * X.frames);
  for (cdouble& v : X.data) v = scale * cdouble(gauss(rng), gauss(rng));
  return X;
}

inline double norm2(const std::vector<cdouble>& v) {
  double s = 0.0;
  for (const cdouble& z : v) s += std::norm(z);
  return std::sqrt(s);
}

inline double rel_diff(const std::vector<cdouble>& a, const std::vector<cdouble>& b) {
  REQUIRE(a.size() == b.size());
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a[i] - b[i]);
    den += std::norm(b[i]);
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

inline double max_abs_diff(const std::vector<cdouble>& a, const std::vector<cdouble>& b) {
  REQUIRE(a.size() == b.size());
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// Dense matrix of a BinSystem, corners included, for solver cross-checks.
inline Eigen::MatrixXd dense_from_bin_system(const fustft::BinSystem& sys) {
  const auto n = static_cast<Eigen::Index>(sys.diag.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) a(i, i) = sys.diag[i];
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    a(i, i + 1) = sys.offdiag[i];
    a(i + 1, i) = sys.offdiag[i];
  }
  if (sys.periodic && n >= 2) {
    a(0, n - 1) += sys.offdiag[sys.diag.size() - 1];
    a(n - 1, 0) += sys.offdiag[sys.diag.size() - 1];
  }
  return a;
}

inline std::vector<cdouble> dense_solve(const fustft::BinSystem& sys) {
  const Eigen::MatrixXd a = dense_from_bin_system(sys);
  Eigen::VectorXcd rhs(a.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i) rhs(i) = sys.rhs[i];
  const Eigen::VectorXcd x = a.cast<cdouble>().partialPivLu().solve(rhs);
  return {x.data(), x.data() + x.size()};
}

// Inner product <a, b> = sum conj(a_i) b_i.
inline cdouble inner(const std::vector<cdouble>& a, const std::vector<cdouble>& b) {
  REQUIRE(a.size() == b.size());
  cdouble s{};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

}  // namespace testutil
