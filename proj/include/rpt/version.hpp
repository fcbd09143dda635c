#pragma once

namespace rpt {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace rpt
