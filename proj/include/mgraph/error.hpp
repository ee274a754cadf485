#pragma once

#include <stdexcept>
#include <string>

namespace mgraph {

/// Failure categories shared by the C++ core and the C API status codes.
enum class ErrorCode {
  kInvalidArgument,
  kParse,
  kNoPath,
  kNotSeparating,
  kZeroFlow,
  kNonConvergence,
  kCapExceeded,
  kDegenerateDuals,
  kCoincidentPoles,
  kTerminalsMerged,
  kIo,
};

const char* ToString(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mgraph
