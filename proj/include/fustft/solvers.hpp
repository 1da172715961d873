#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fustft/errors.hpp"
#include "fustft/fft.hpp"

namespace fustft {

// Elementary-step counter for the structured solvers (factor/eliminate/
// substitute iterations, not FFT butterflies). Thread-local so concurrent
// solves do not interleave; tests assert the count grows affinely in n.
inline thread_local std::uint64_t solver_step_count = 0;

// One per-frequency-residue normal-equation system. diag holds n entries;
// offdiag holds n-1 couplings for an open chain, or n with `periodic` set,
// the last one being the corner coupling between the first and last unknown.
struct BinSystem {
  std::vector<double> diag;
  std::vector<double> offdiag;
  std::vector<cdouble> rhs;
  bool periodic = false;
};

namespace detail {

inline void check_system(const BinSystem& s) {
  const std::size_t n = s.diag.size();
  if (n == 0) throw std::invalid_argument("solver: empty system");
  const std::size_t expected = s.periodic ? n : n - 1;
  if (s.offdiag.size() != expected)
    throw std::invalid_argument("solver: off-diagonal size mismatch");
  if (s.rhs.size() != n) throw std::invalid_argument("solver: rhs size mismatch");
}

inline double pivot_floor(const std::vector<double>& diag) {
  double peak = 0.0;
  for (double d : diag) peak = std::max(peak, std::abs(d));
  return 1e-14 * peak;
}

struct TriFactor {
  std::vector<double> inv_pivot;  // n
  std::vector<double> upper;      // n-1
};

inline TriFactor factor_tridiagonal(std::span<const double> diag, std::span<const double> off,
                                    double floor) {
  const std::size_t n = diag.size();
  TriFactor f;
  f.inv_pivot.resize(n);
  f.upper.resize(n - 1);
  double pivot = diag[0];
  for (std::size_t i = 0;; ++i) {
    if (std::abs(pivot) < floor)
      throw numerical_error("near-singular pivot at row " + std::to_string(i));
    f.inv_pivot[i] = 1.0 / pivot;
    if (i + 1 == n) break;
    f.upper[i] = off[i] * f.inv_pivot[i];
    pivot = diag[i + 1] - off[i] * f.upper[i];
    ++solver_step_count;
  }
  return f;
}

template <typename Scalar>
void solve_factored(const TriFactor& f, std::span<const double> off, std::vector<Scalar>& x) {
  const std::size_t n = f.inv_pivot.size();
  x[0] *= f.inv_pivot[0];
  for (std::size_t i = 1; i < n; ++i) {
    x[i] = (x[i] - off[i - 1] * x[i - 1]) * f.inv_pivot[i];
    ++solver_step_count;
  }
  for (std::size_t i = n - 1; i-- > 0;) {
    x[i] -= f.upper[i] * x[i + 1];
    ++solver_step_count;
  }
}

// Unnormalized DST-I, out_q = sum_j v_j sin((j+1)(q+1) pi / (n+1)), realized
// as the odd extension of v fed through a length-2(n+1) FFT. Applying it
// twice scales by (n+1)/2. out may alias v.
inline void dst_i(Fft& fft, std::span<const cdouble> v, std::span<cdouble> out,
                  std::vector<cdouble>& scratch) {
  const std::size_t n = v.size();
  scratch.assign(2 * (n + 1), cdouble{});
  for (std::size_t j = 0; j < n; ++j) {
    scratch[1 + j] = v[j];
    scratch[n + 2 + j] = -v[n - 1 - j];
  }
  fft.transform(scratch, scratch);
  const cdouble half_i(0.0, 0.5);
  for (std::size_t q = 0; q < n; ++q) out[q] = half_i * scratch[q + 1];
}

}  // namespace detail

// Thomas elimination for a symmetric tridiagonal system with complex rhs.
// Handles n = 1 (x = rhs / diag). Pivots below 1e-14 * max|diag| abort with
// numerical_error.
inline std::vector<cdouble> solve_tridiagonal(const BinSystem& sys) {
  if (sys.periodic) throw std::invalid_argument("solve_tridiagonal: system is periodic");
  detail::check_system(sys);
  const double floor = detail::pivot_floor(sys.diag);
  const detail::TriFactor f = detail::factor_tridiagonal(sys.diag, sys.offdiag, floor);
  std::vector<cdouble> x(sys.rhs.begin(), sys.rhs.end());
  detail::solve_factored(f, sys.offdiag, x);
  return x;
}

// Cyclic variant via a rank-one split A = T + u v^T with u = (g, 0..., c),
// v = (1, 0..., c/g) and g = -diag[0], which keeps T positive definite
// whenever A is. Two Thomas solves sharing one factorization. Needs n >= 3.
inline std::vector<cdouble> solve_periodic_tridiagonal(const BinSystem& sys) {
  if (!sys.periodic)
    throw std::invalid_argument("solve_periodic_tridiagonal: system is not periodic");
  detail::check_system(sys);
  const std::size_t n = sys.diag.size();
  if (n < 3) throw std::invalid_argument("periodic solver needs at least three unknowns");
  const double corner = sys.offdiag[n - 1];
  if (corner == 0.0) {
    BinSystem open;
    open.diag = sys.diag;
    open.offdiag.assign(sys.offdiag.begin(), sys.offdiag.end() - 1);
    open.rhs = sys.rhs;
    return solve_tridiagonal(open);
  }
  const double floor = detail::pivot_floor(sys.diag);
  if (std::abs(sys.diag[0]) < floor) throw numerical_error("near-singular pivot at row 0");
  const double gamma = -sys.diag[0];
  std::vector<double> diag = sys.diag;
  diag[0] -= gamma;
  diag[n - 1] -= corner * corner / gamma;
  const std::span<const double> off(sys.offdiag.data(), n - 1);
  const detail::TriFactor f = detail::factor_tridiagonal(diag, off, floor);

  std::vector<cdouble> z(sys.rhs.begin(), sys.rhs.end());
  detail::solve_factored(f, off, z);
  std::vector<double> q(n, 0.0);
  q[0] = gamma;
  q[n - 1] = corner;
  detail::solve_factored(f, off, q);

  const double denom = 1.0 + q[0] + corner / gamma * q[n - 1];
  if (std::abs(denom) < 1e-14) throw numerical_error("singular rank-one correction");
  const cdouble scale = (z[0] + corner / gamma * z[n - 1]) / denom;
  for (std::size_t i = 0; i < n; ++i) z[i] -= scale * q[i];
  return z;
}

// Constant-coefficient open chain: diagonalized by DST-I with eigenvalues
// diag + 2 coupling cos((q+1) pi / (n+1)). Requires diag - 2|coupling| > 0.
inline std::vector<cdouble> solve_toeplitz_dst(double diag, double coupling,
                                               std::span<const cdouble> rhs) {
  const std::size_t n = rhs.size();
  if (n == 0) throw std::invalid_argument("toeplitz solver: empty system");
  if (!(diag - 2.0 * std::abs(coupling) > 0.0))
    throw std::invalid_argument("toeplitz solver needs diag - 2|coupling| > 0");
  std::vector<cdouble> x(rhs.begin(), rhs.end());
  if (coupling == 0.0) {
    for (auto& v : x) v /= diag;
    return x;
  }
  Fft fft(2 * (n + 1), Fft::Direction::forward);
  std::vector<cdouble> scratch;
  detail::dst_i(fft, x, x, scratch);
  for (std::size_t q = 0; q < n; ++q) {
    const double lambda =
        diag + 2.0 * coupling *
                   std::cos(static_cast<double>(q + 1) * std::numbers::pi /
                            static_cast<double>(n + 1));
    x[q] /= lambda;
    ++solver_step_count;
  }
  detail::dst_i(fft, x, x, scratch);
  const double norm = 2.0 / static_cast<double>(n + 1);
  for (auto& v : x) v *= norm;
  return x;
}

// Constant-coefficient cyclic chain, i.e. the Hermitian circulant with first
// column (diag, conj(coupling), 0, ..., 0, coupling): eigenvalues are the FFT
// of that column, diag + 2 Re(coupling e^{i 2 pi q / n}). Optionally reports
// max/min eigenvalue as a condition number.
inline std::vector<cdouble> solve_circulant_fft(double diag, cdouble coupling,
                                                std::span<const cdouble> rhs,
                                                double* condition_number = nullptr) {
  const std::size_t n = rhs.size();
  if (n < 3) throw std::invalid_argument("circulant solver needs at least three unknowns");
  if (!(diag - 2.0 * std::abs(coupling) > 0.0))
    throw std::invalid_argument("circulant solver needs diag - 2|coupling| > 0");
  Fft fwd(n, Fft::Direction::forward);
  Fft inv(n, Fft::Direction::inverse);

  std::vector<cdouble> lambda(n, cdouble{});
  lambda[0] = diag;
  lambda[1] = std::conj(coupling);
  lambda[n - 1] = coupling;
  fwd.transform(lambda, lambda);
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (const cdouble& v : lambda) {
    lo = std::min(lo, v.real());
    hi = std::max(hi, v.real());
  }
  if (!(lo > 0.0)) throw numerical_error("non-positive eigenvalue in circulant fast path");
  if (condition_number != nullptr) *condition_number = hi / lo;

  std::vector<cdouble> x(rhs.begin(), rhs.end());
  fwd.transform(x, x);
  for (std::size_t q = 0; q < n; ++q) {
    x[q] /= lambda[q].real();
    ++solver_step_count;
  }
  inv.transform(x, x);
  const double norm = 1.0 / static_cast<double>(n);
  for (auto& v : x) v *= norm;
  return x;
}

// Similarity transform for chains whose coupling flips sign every step,
// offdiag[j] = (-1)^j b. D A D^H then has constant coupling:
//   open chain        d_j = (-1)^{floor(j/2)},        coupling b
//   cyclic, n % 4 = 0 the same sign pattern,          coupling b
//   cyclic, n % 4 = 2 d_j alternating in {1, -i},     coupling i b
// A cyclic chain with odd n admits no such transform and is rejected.
struct AlternatingReduction {
  cdouble coupling{};
  std::vector<cdouble> phase;  // diagonal of D, unit modulus
  bool periodic = false;
};

inline AlternatingReduction alternating_sign_reduce(const BinSystem& sys) {
  detail::check_system(sys);
  const std::size_t n = sys.diag.size();
  const double b0 = sys.offdiag.empty() ? 0.0 : sys.offdiag[0];
  for (std::size_t j = 0; j < sys.offdiag.size(); ++j) {
    const double want = (j % 2 == 0) ? b0 : -b0;
    if (sys.offdiag[j] != want)
      throw std::invalid_argument("off-diagonal is not an exact alternating-sign pattern");
  }
  AlternatingReduction red;
  red.periodic = sys.periodic;
  red.phase.assign(n, cdouble(1.0, 0.0));
  if (b0 == 0.0) return red;
  if (sys.periodic && n % 2 != 0)
    throw std::invalid_argument("cyclic alternating pattern needs an even size");
  if (!sys.periodic || n % 4 == 0) {
    for (std::size_t j = 0; j < n; ++j)
      if ((j / 2) % 2 == 1) red.phase[j] = cdouble(-1.0, 0.0);
    red.coupling = b0;
  } else {
    for (std::size_t j = 1; j < n; j += 2) red.phase[j] = cdouble(0.0, -1.0);
    red.coupling = cdouble(0.0, b0);
  }
  return red;
}

// Reduce + structured solve + map back: solves an alternating-coupling chain
// with constant diagonal through the DST (open) or circulant (cyclic) path.
// With A = D^H T D, solving A x = r means x = D^H T^{-1} (D r).
inline std::vector<cdouble> solve_alternating_fast(const BinSystem& sys,
                                                   double* condition_number = nullptr) {
  const AlternatingReduction red = alternating_sign_reduce(sys);
  const std::size_t n = sys.diag.size();
  for (double d : sys.diag)
    if (d != sys.diag[0])
      throw std::invalid_argument("alternating fast path needs a constant diagonal");
  std::vector<cdouble> r(n);
  for (std::size_t j = 0; j < n; ++j) r[j] = red.phase[j] * sys.rhs[j];
  std::vector<cdouble> z = sys.periodic
                               ? solve_circulant_fft(sys.diag[0], red.coupling, r, condition_number)
                               : solve_toeplitz_dst(sys.diag[0], red.coupling.real(), r);
  for (std::size_t j = 0; j < n; ++j) z[j] *= std::conj(red.phase[j]);
  return z;
}

}  // namespace fustft
