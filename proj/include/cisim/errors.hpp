#pragma once

#include <stdexcept>
#include <string>

namespace cisim {

/// Malformed input text (integral files, state files). Messages carry the
/// offending line number where one exists.
class parse_error : public std::runtime_error {
  public:
    explicit parse_error(const std::string& msg) : std::runtime_error(msg) {}
    parse_error(std::size_t line, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg) {}
};

/// A configured resource cap (dimension, dense-reference size) was exceeded.
class cap_error : public std::runtime_error {
  public:
    explicit cap_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// An internal consistency check failed (coloring not one-sparse,
/// eigendecomposition residual too large, conflicting table entries).
class verification_error : public std::runtime_error {
  public:
    explicit verification_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace cisim
