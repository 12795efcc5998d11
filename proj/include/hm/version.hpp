#pragma once

namespace hm {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace hm
