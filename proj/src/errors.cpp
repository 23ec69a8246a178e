#include "permcx/errors.hpp"

namespace permcx {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidOrder: return "invalid-order";
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kInvalidClass: return "invalid-class";
    case ErrorCode::kDomain: return "domain";
    case ErrorCode::kUnsupportedRange: return "unsupported-range";
    case ErrorCode::kInvalidData: return "invalid-data";
    case ErrorCode::kInsufficientData: return "insufficient-data";
    case ErrorCode::kInvalidDistribution: return "invalid-distribution";
    case ErrorCode::kSaturatedCensus: return "saturated-census";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kOverflow: return "overflow";
    case ErrorCode::kNumerical: return "numerical";
  }
  return "unknown";
}

int exit_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidOrder:
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kInvalidClass:
    case ErrorCode::kDomain:
    case ErrorCode::kUnsupportedRange:
      return 2;
    case ErrorCode::kInvalidData:
    case ErrorCode::kInsufficientData:
    case ErrorCode::kInvalidDistribution:
    case ErrorCode::kSaturatedCensus:
    case ErrorCode::kIo:
      return 3;
    case ErrorCode::kOverflow:
    case ErrorCode::kNumerical:
      return 4;
  }
  return 4;
}

}  // namespace permcx
