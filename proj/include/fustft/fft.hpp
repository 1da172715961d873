#pragma once

#include <fftw3.h>

#include <algorithm>
#include <complex>
#include <cstddef>
#include <mutex>
#include <new>
#include <span>
#include <stdexcept>

namespace fustft {

using cdouble = std::complex<double>;

namespace detail {

// FFTW's planner is not thread-safe; executing existing plans is.
inline std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace detail

// A complex-to-complex transform of fixed length. The inverse direction is
// the plain unnormalized conjugate sum, i.e. inverse(forward(x)) == n * x.
// Instances own their plan and scratch buffer, so distinct instances may be
// used concurrently from different threads.
class Fft {
 public:
  enum class Direction { forward, inverse };

  Fft(std::size_t length, Direction dir) : length_(length) {
    if (length == 0) throw std::invalid_argument("Fft: length must be positive");
    buffer_ = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * length));
    if (buffer_ == nullptr) throw std::bad_alloc();
    std::lock_guard<std::mutex> lock(detail::fftw_planner_mutex());
    plan_ = fftw_plan_dft_1d(static_cast<int>(length), buffer_, buffer_,
                             dir == Direction::forward ? FFTW_FORWARD : FFTW_BACKWARD,
                             FFTW_ESTIMATE);
    if (plan_ == nullptr) {
      fftw_free(buffer_);
      throw std::runtime_error("Fft: plan creation failed");
    }
  }

  ~Fft() {
    {
      std::lock_guard<std::mutex> lock(detail::fftw_planner_mutex());
      fftw_destroy_plan(plan_);
    }
    fftw_free(buffer_);
  }

  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  std::size_t length() const { return length_; }

  // out may alias in; both must have exactly length() elements.
  void transform(std::span<const cdouble> in, std::span<cdouble> out) {
    if (in.size() != length_ || out.size() != length_)
      throw std::invalid_argument("Fft: span length mismatch");
    auto* scratch = reinterpret_cast<cdouble*>(buffer_);
    std::copy(in.begin(), in.end(), scratch);
    fftw_execute(plan_);
    std::copy(scratch, scratch + length_, out.begin());
  }

 private:
  std::size_t length_;
  fftw_complex* buffer_;
  fftw_plan plan_;
};

}  // namespace fustft
