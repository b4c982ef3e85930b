#pragma once

namespace c45 {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace c45
