#pragma once

namespace cisim {

inline constexpr const char* kVersion = "0.1.0";

} // namespace cisim
