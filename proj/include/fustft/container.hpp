#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>

#include "fustft/binary_io.hpp"
#include "fustft/errors.hpp"
#include "fustft/transforms.hpp"
#include "fustft/types.hpp"

namespace fustft {

// Spectrogram container, all fields little-endian:
//   magic        "FUST"
//   version      u16, currently 1
//   kind         u8 (TransformKind)
//   window hint  u8 (0 unspecified, 1 sine, 2 hann; readers may ignore it)
//   frame_length u64
//   shift        u64
//   zero_pad     u64
//   signal_len   u64
//   sample_rate  f64
//   bins         u64
//   frames       u64
//   payload      bins * frames complex entries, bin-major (all frames of
//                bin 0, then bin 1, ...), each as two f64 (re, im)
inline constexpr std::array<char, 4> container_magic = {'F', 'U', 'S', 'T'};
inline constexpr std::uint16_t container_version = 1;

enum class WindowHint : std::uint8_t { unspecified = 0, sine = 1, hann = 2 };

inline void write_container(const std::filesystem::path& path, const Spectrogram& X,
                            WindowHint hint = WindowHint::unspecified) {
  if (X.data.size() != X.bins * X.frames) throw data_error("container: payload size mismatch");
  detail::atomic_write(path, [&](std::ostream& out) {
    out.write(container_magic.data(), 4);
    detail::put_le<std::uint16_t>(out, container_version);
    detail::put_le<std::uint8_t>(out, static_cast<std::uint8_t>(X.config.kind));
    detail::put_le<std::uint8_t>(out, static_cast<std::uint8_t>(hint));
    detail::put_le<std::uint64_t>(out, X.config.frame_length);
    detail::put_le<std::uint64_t>(out, X.config.shift);
    detail::put_le<std::uint64_t>(out, X.config.zero_pad);
    detail::put_le<std::uint64_t>(out, X.signal_length);
    detail::put_f64_le(out, X.sample_rate);
    detail::put_le<std::uint64_t>(out, X.bins);
    detail::put_le<std::uint64_t>(out, X.frames);
    for (std::size_t k = 0; k < X.bins; ++k) {
      for (std::size_t l = 0; l < X.frames; ++l) {
        const cdouble& v = X.at(k, l);
        detail::put_f64_le(out, v.real());
        detail::put_f64_le(out, v.imag());
      }
    }
  });
}

struct ContainerFile {
  Spectrogram spectrogram;
  WindowHint window_hint = WindowHint::unspecified;
};

inline ContainerFile read_container(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw data_error("cannot open container: " + path.string());

  std::array<char, 4> magic{};
  in.read(magic.data(), 4);
  if (!in || magic != container_magic)
    throw data_error("not a spectrogram container: " + path.string());
  const auto version = detail::get_le<std::uint16_t>(in, "version");
  if (version != container_version)
    throw data_error("unsupported container version " + std::to_string(version));
  const auto kind_raw = detail::get_le<std::uint8_t>(in, "kind");
  if (kind_raw > 4) throw data_error("container: unknown transform kind");
  const auto hint_raw = detail::get_le<std::uint8_t>(in, "window hint");

  ContainerFile file;
  Spectrogram& X = file.spectrogram;
  X.config.kind = static_cast<TransformKind>(kind_raw);
  X.config.frame_length = detail::get_le<std::uint64_t>(in, "frame length");
  X.config.shift = detail::get_le<std::uint64_t>(in, "shift");
  X.config.zero_pad = detail::get_le<std::uint64_t>(in, "zero pad");
  X.signal_length = detail::get_le<std::uint64_t>(in, "signal length");
  X.sample_rate = detail::get_f64_le(in, "sample rate");
  X.bins = detail::get_le<std::uint64_t>(in, "bins");
  X.frames = detail::get_le<std::uint64_t>(in, "frames");
  file.window_hint = hint_raw <= 2 ? static_cast<WindowHint>(hint_raw) : WindowHint::unspecified;

  try {
    X.config.validate();
    if (X.bins != X.config.bins()) throw std::invalid_argument("bin count does not match kind");
    if (X.frames != frame_count(X.signal_length, X.config))
      throw std::invalid_argument("frame count does not match signal length");
  } catch (const std::invalid_argument& e) {
    throw data_error(std::string("container holds an invalid configuration: ") + e.what());
  }

  X.data.resize(X.bins * X.frames);
  for (std::size_t k = 0; k < X.bins; ++k) {
    for (std::size_t l = 0; l < X.frames; ++l) {
      const double re = detail::get_f64_le(in, "payload");
      const double im = detail::get_f64_le(in, "payload");
      X.at(k, l) = cdouble(re, im);
    }
  }
  in.peek();
  if (!in.eof()) throw data_error("container: trailing bytes after payload");
  return file;
}

}  // namespace fustft
