#pragma once

namespace fekete_dyn {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace fekete_dyn
