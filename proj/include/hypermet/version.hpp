#pragma once

namespace hypermet {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace hypermet
