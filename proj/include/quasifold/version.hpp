#pragma once

namespace quasifold {

inline constexpr const char* tool_name = "quasifold";
inline constexpr const char* tool_version = "0.1.0";

}  // namespace quasifold
