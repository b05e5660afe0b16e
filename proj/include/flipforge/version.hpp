#pragma once

namespace flipforge {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kFormatVersion = "tri-v1";

}  // namespace flipforge
