#pragma once

namespace huvf {

inline constexpr const char* kToolName = "huvf";
inline constexpr const char* kVersion = "1.0.0";

} // namespace huvf
