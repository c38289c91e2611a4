#pragma once

namespace psryd {

inline constexpr const char* tool_version = "0.1.0";
inline constexpr int output_schema_version = 1;

} // namespace psryd
