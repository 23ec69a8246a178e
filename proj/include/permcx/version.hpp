#pragma once

namespace permcx {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace permcx
