#pragma once

#include <cstddef>
#include <limits>

#include "fustft/normal_eq.hpp"
#include "fustft/types.hpp"
#include "fustft/window.hpp"

namespace fustft {

// Positivity margin a_i - 2|b_i| of the per-bin normal equations. A positive
// margin for every residue makes each tridiagonal system strictly diagonally
// dominant, hence positive definite, for any signal length.
struct MarginReport {
  double min_margin = std::numeric_limits<double>::infinity();
  std::size_t min_index = 0;
  bool positive = false;
};

struct WindowValidation {
  MarginReport type_i;
  MarginReport type_ii;
  MarginReport type_iii;
  bool all_positive = false;
};

inline WindowValidation validate_fustft_window(const Window& w, std::size_t shift) {
  const std::size_t length = w.size();
  if (length % 4 != 0)
    throw std::invalid_argument("window validation: frame length must be divisible by 4");
  if (shift < 1 || shift > length / 2)
    throw std::invalid_argument("window validation: shift must be in [1, frame length / 2]");

  const std::vector<double> a = compute_a(w, shift);
  const TransformKind kinds[] = {TransformKind::fustft_i, TransformKind::fustft_ii,
                                 TransformKind::fustft_iii};
  WindowValidation report;
  MarginReport* out[] = {&report.type_i, &report.type_ii, &report.type_iii};
  for (int t = 0; t < 3; ++t) {
    const std::vector<double> b = compute_b(w, shift, kinds[t]);
    MarginReport r;
    for (std::size_t i = 0; i < b.size(); ++i) {
      const double margin = a[i % a.size()] - 2.0 * std::abs(b[i]);
      if (margin < r.min_margin) {
        r.min_margin = margin;
        r.min_index = i;
      }
    }
    r.positive = r.min_margin > 0.0;
    *out[t] = r;
  }
  report.all_positive =
      report.type_i.positive && report.type_ii.positive && report.type_iii.positive;
  return report;
}

}  // namespace fustft
