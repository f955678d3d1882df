#pragma once

namespace sohp {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace sohp
