#pragma once

namespace smspsa {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace smspsa
