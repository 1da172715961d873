#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "fustft/binary_io.hpp"
#include "fustft/errors.hpp"
#include "fustft/types.hpp"

namespace fustft {

// Minimal RIFF/WAVE reader: mono, PCM 16-bit or IEEE float 32-bit. Unknown
// chunks are skipped. PCM samples are scaled by 1/32768.
inline Signal read_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw data_error("cannot open wav file: " + path.string());

  char tag[4];
  in.read(tag, 4);
  if (!in || std::string(tag, 4) != "RIFF") throw data_error("not a RIFF file: " + path.string());
  detail::get_le<std::uint32_t>(in, "riff size");
  in.read(tag, 4);
  if (!in || std::string(tag, 4) != "WAVE") throw data_error("not a WAVE file: " + path.string());

  bool have_fmt = false;
  std::uint16_t format = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t bits = 0;
  std::vector<double> samples;
  bool have_data = false;

  while (in.read(tag, 4)) {
    const std::string chunk(tag, 4);
    const auto size = detail::get_le<std::uint32_t>(in, "chunk size");
    if (chunk == "fmt ") {
      if (size < 16) throw data_error("wav: malformed fmt chunk");
      format = detail::get_le<std::uint16_t>(in, "format");
      channels = detail::get_le<std::uint16_t>(in, "channels");
      sample_rate = detail::get_le<std::uint32_t>(in, "sample rate");
      detail::get_le<std::uint32_t>(in, "byte rate");
      detail::get_le<std::uint16_t>(in, "block align");
      bits = detail::get_le<std::uint16_t>(in, "bits per sample");
      in.ignore(size - 16);
      have_fmt = true;
    } else if (chunk == "data") {
      if (!have_fmt) throw data_error("wav: data chunk before fmt chunk");
      if (channels != 1) throw data_error("wav: only mono input is supported");
      if (format == 1 && bits == 16) {
        const std::size_t count = size / 2;
        samples.reserve(count);
        for (std::size_t i = 0; i < count; ++i) {
          const auto raw = detail::get_le<std::uint16_t>(in, "sample");
          samples.push_back(static_cast<double>(static_cast<std::int16_t>(raw)) / 32768.0);
        }
      } else if (format == 3 && bits == 32) {
        const std::size_t count = size / 4;
        samples.reserve(count);
        for (std::size_t i = 0; i < count; ++i) {
          const auto raw = detail::get_le<std::uint32_t>(in, "sample");
          samples.push_back(static_cast<double>(std::bit_cast<float>(raw)));
        }
      } else {
        throw data_error("wav: unsupported encoding (need mono pcm16 or float32)");
      }
      have_data = true;
      if (size % 2 == 1) in.ignore(1);
    } else {
      in.ignore(size + (size % 2));
      if (!in) throw data_error("wav: truncated chunk " + chunk);
    }
  }
  if (!have_data) throw data_error("wav: no data chunk in " + path.string());
  return make_real_signal(std::move(samples), static_cast<double>(sample_rate));
}

// Writes the real part as mono IEEE float 32-bit, atomically.
inline void write_wav(const std::filesystem::path& path, const Signal& x) {
  if (!(x.sample_rate > 0.0)) throw data_error("wav: sample rate must be positive to write");
  const auto rate = static_cast<std::uint32_t>(x.sample_rate);
  const auto count = static_cast<std::uint32_t>(x.size());
  const std::uint32_t data_size = count * 4;

  detail::atomic_write(path, [&](std::ostream& out) {
    out.write("RIFF", 4);
    detail::put_le<std::uint32_t>(out, 4 + (8 + 16) + (8 + 4) + (8 + data_size));
    out.write("WAVE", 4);

    out.write("fmt ", 4);
    detail::put_le<std::uint32_t>(out, 16);
    detail::put_le<std::uint16_t>(out, 3);  // IEEE float
    detail::put_le<std::uint16_t>(out, 1);  // mono
    detail::put_le<std::uint32_t>(out, rate);
    detail::put_le<std::uint32_t>(out, rate * 4);
    detail::put_le<std::uint16_t>(out, 4);
    detail::put_le<std::uint16_t>(out, 32);

    out.write("fact", 4);
    detail::put_le<std::uint32_t>(out, 4);
    detail::put_le<std::uint32_t>(out, count);

    out.write("data", 4);
    detail::put_le<std::uint32_t>(out, data_size);
    for (const cdouble& v : x.samples)
      detail::put_le<std::uint32_t>(out, std::bit_cast<std::uint32_t>(static_cast<float>(v.real())));
  });
}

}  // namespace fustft
