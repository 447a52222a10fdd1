#pragma once

#include <stdexcept>
#include <string>

namespace mtfa {

// Error categories map 1:1 onto CLI exit codes (2/3/4).
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DimensionError : std::invalid_argument {
  explicit DimensionError(const std::string& msg) : std::invalid_argument(msg) {}
};

struct AdmissibilityError : std::runtime_error {
  explicit AdmissibilityError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace mtfa
