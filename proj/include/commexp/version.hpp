#pragma once

namespace commexp {

inline constexpr const char* kToolName = "commexp";
inline constexpr const char* kVersion = "1.0.0";

}  // namespace commexp
