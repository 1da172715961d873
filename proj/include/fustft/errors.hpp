#pragma once

#include <stdexcept>
#include <string>

namespace fustft {

// Malformed or unsupported input data: bad container magic, truncated
// payload, unsupported WAV encoding, mismatched dimensions on disk.
class data_error : public std::runtime_error {
 public:
  explicit data_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failure inside a solver: near-singular pivot, loss of the
// positivity margin a fast path relies on.
class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace fustft
