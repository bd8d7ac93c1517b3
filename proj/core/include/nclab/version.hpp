#pragma once

namespace nclab {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace nclab
