#pragma once

namespace srp {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace srp
