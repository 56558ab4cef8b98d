#pragma once

namespace lpc {

inline constexpr const char* kToolName = "lpcompact";
inline constexpr const char* kToolVersion = "0.1.0";

} // namespace lpc
