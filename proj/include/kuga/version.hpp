#pragma once

namespace kuga {

inline constexpr const char* kToolVersion = "1.0.0";

}  // namespace kuga
