#pragma once

#include <stdexcept>
#include <string>

namespace permcx {

enum class ErrorCode {
  kInvalidOrder,
  kInvalidArgument,
  kInvalidClass,
  kDomain,
  kUnsupportedRange,
  kInvalidData,
  kInsufficientData,
  kInvalidDistribution,
  kSaturatedCensus,
  kIo,
  kOverflow,
  kNumerical,
};

const char* to_string(ErrorCode code);

// Process exit status for scripting: 2 validation, 3 data, 4 numerical.
int exit_status(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace permcx
