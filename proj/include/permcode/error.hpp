#pragma once

#include <stdexcept>
#include <string>

namespace permcode {

enum class ErrorCode {
  InvalidArgument,
  DegreeMismatch,
  OutOfRange,
  LimitExceeded,
  Parse,
  Io,
  Inapplicable,
  Internal,
};

/// Base exception for every failure raised by the library. Absence of a
/// result (no group element, decode failure) is reported as a value, not as
/// an Error.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace permcode
