#pragma once

namespace aetf {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace aetf
