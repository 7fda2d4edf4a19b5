#pragma once

#include <stdexcept>
#include <string>

namespace csmaa {

enum class ErrorCode {
  Io,
  Parse,
  InvalidArgument,
  Infeasible,
  Numeric,
};

/// Library-wide exception. The code maps one-to-one onto the C API status
/// values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace csmaa
