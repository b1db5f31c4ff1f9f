#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace molcav {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One or more configuration invariants were violated. Each entry names the field.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const noexcept { return problems_; }

 private:
  std::vector<std::string> problems_;
};

/// Shapes or subsystem dimensions do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Numerical failure: eigensolver non-convergence, non-physical state, NaN.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Malformed or corrupt file on disk.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace molcav
