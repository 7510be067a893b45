#pragma once

namespace zetamix {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace zetamix
