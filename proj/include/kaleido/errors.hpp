#pragma once

#include <stdexcept>
#include <string>

namespace kaleido {

// Every diagnostic starts with the error kind so CLI messages and logs can be
// matched on it.

class DimensionMismatch : public std::invalid_argument {
 public:
  explicit DimensionMismatch(const std::string& what)
      : std::invalid_argument("DimensionMismatch: " + what) {}
};

// alpha = 0 with n >= 2: f_k(0) = 0 for k >= 1, so the cat state is undefined.
class DegenerateAlpha : public std::domain_error {
 public:
  explicit DegenerateAlpha(const std::string& what)
      : std::domain_error("DegenerateAlpha: " + what) {}
};

class SeriesNotConverged : public std::runtime_error {
 public:
  explicit SeriesNotConverged(const std::string& what)
      : std::runtime_error("SeriesNotConverged: " + what) {}
};

class TruncationTooSmall : public std::invalid_argument {
 public:
  explicit TruncationTooSmall(const std::string& what)
      : std::invalid_argument("TruncationTooSmall: " + what) {}
};

}  // namespace kaleido
