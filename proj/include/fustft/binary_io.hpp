#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include "fustft/errors.hpp"

namespace fustft::detail {

// Little-endian scalar IO. Hosts are assumed little-endian or byte-swapped
// explicitly; everything on disk is little-endian.

template <typename T>
T byteswap_if_big(T v) {
  if constexpr (std::endian::native == std::endian::big) {
    auto bytes = std::bit_cast<std::array<std::byte, sizeof(T)>>(v);
    std::reverse(bytes.begin(), bytes.end());
    return std::bit_cast<T>(bytes);
  }
  return v;
}

template <typename T>
void put_le(std::ostream& out, T v) {
  v = byteswap_if_big(v);
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

inline void put_f64_le(std::ostream& out, double v) {
  put_le(out, std::bit_cast<std::uint64_t>(v));
}

template <typename T>
T get_le(std::istream& in, const char* what) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw data_error(std::string("truncated input while reading ") + what);
  return byteswap_if_big(v);
}

inline double get_f64_le(std::istream& in, const char* what) {
  return std::bit_cast<double>(get_le<std::uint64_t>(in, what));
}

// 17 significant digits, enough to round-trip a double exactly.
inline std::string g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Write-to-temp-then-rename so partially written files never appear under
// the target name.
template <typename WriteBody>
void atomic_write(const std::filesystem::path& path, WriteBody&& body) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw data_error("cannot open for writing: " + tmp.string());
    body(out);
    out.flush();
    if (!out) throw data_error("write failed: " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw data_error("cannot move " + tmp.string() + " into place: " + ec.message());
  }
}

}  // namespace fustft::detail
