#pragma once

#include <cstdio>
#include <filesystem>
#include <ostream>
#include <string>

#include "fustft/binary_io.hpp"
#include "fustft/types.hpp"

namespace fustft {

// |X|^2 as CSV: a header row of frame times (seconds, frame centers), then
// one row per bin led by its frequency in Hz. Kind iii rows carry the two
// grids the bin alternates between, one frequency column per parity. When
// the sample rate is unknown, bin and frame indices are emitted instead and
// a warning is written to `warnings`.
inline void write_power_csv(const std::filesystem::path& path, const Spectrogram& X,
                            std::ostream* warnings = nullptr) {
  const bool have_rate = X.sample_rate > 0.0;
  if (!have_rate && warnings != nullptr)
    *warnings << "power csv: no sample rate recorded; emitting bin and frame indices\n";
  const bool two_grids = X.config.kind == TransformKind::fustft_iii;
  const double rate = X.sample_rate;
  const auto frame_length = static_cast<double>(X.config.frame_length);

  detail::atomic_write(path, [&](std::ostream& out) {
    out << (two_grids ? "frequency_even_hz,frequency_odd_hz" : "frequency_hz");
    for (std::size_t l = 0; l < X.frames; ++l) {
      double t;
      if (have_rate) {
        const double center = static_cast<double>(l * X.config.shift + X.config.shift) -
                              frame_length / 2.0;
        t = center / rate;
      } else {
        t = static_cast<double>(l);
      }
      out << ',' << detail::g17(t);
    }
    out << '\n';
    for (std::size_t k = 0; k < X.bins; ++k) {
      double even_freq, odd_freq;
      if (have_rate) {
        even_freq = static_cast<double>(2 * k) / frame_length * rate;
        odd_freq = static_cast<double>(2 * k + 1) / frame_length * rate;
      } else {
        even_freq = static_cast<double>(2 * k);
        odd_freq = static_cast<double>(2 * k + 1);
      }
      switch (X.config.kind) {
        case TransformKind::stft:
          out << detail::g17(have_rate ? static_cast<double>(k) / frame_length * rate
                                       : static_cast<double>(k));
          break;
        case TransformKind::fostft:
          out << detail::g17(
              have_rate
                  ? static_cast<double>(k) /
                        static_cast<double>(X.config.frame_length + X.config.zero_pad) * rate
                  : static_cast<double>(k));
          break;
        case TransformKind::fustft_i:
          out << detail::g17(even_freq);
          break;
        case TransformKind::fustft_ii:
          out << detail::g17(odd_freq);
          break;
        case TransformKind::fustft_iii:
          out << detail::g17(even_freq) << ',' << detail::g17(odd_freq);
          break;
      }
      for (std::size_t l = 0; l < X.frames; ++l) out << ',' << detail::g17(std::norm(X.at(k, l)));
      out << '\n';
    }
  });
}

}  // namespace fustft
