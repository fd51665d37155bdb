#pragma once

namespace toruslocus {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace toruslocus
