#pragma once

namespace torhom {

inline constexpr const char* kToolName = "torhom";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace torhom
