#pragma once

namespace semirel {

inline constexpr const char* kProgramName = "semirel-sim";
inline constexpr const char* kVersion = "1.0.0";

}  // namespace semirel
