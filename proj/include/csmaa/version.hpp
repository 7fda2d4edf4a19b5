#pragma once

namespace csmaa {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace csmaa
