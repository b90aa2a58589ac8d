#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace lapnum {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class ErrorCode {
  InvalidArgument = 1,
  Unsupported = 2,
  NotCompact = 3,
  Unbounded = 4,
  Config = 5,
  Internal = 6,
};

// Every failure raised by the library carries one of the codes above; the C
// API maps them one-to-one onto lapnum_status values.
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

}  // namespace lapnum
