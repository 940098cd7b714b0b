#ifndef MFUSION_ERRORS_HPP
#define MFUSION_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mfusion {

// I/O failures: missing/unreadable/unwritable files.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed file contents (bad magic, truncated payload, out-of-range maxval).
class FormatError : public std::runtime_error {
 public:
  explicit FormatError(const std::string& msg) : std::runtime_error(msg) {}
};

// Incompatible raster dimensions.
class DimensionError : public std::runtime_error {
 public:
  explicit DimensionError(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid configuration values (unknown method, bad block dims, ...).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Internally inconsistent composite value (mismatched subband shapes, ...).
class StructureError : public std::runtime_error {
 public:
  explicit StructureError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace mfusion

#endif
