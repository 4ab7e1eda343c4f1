#pragma once

namespace somnb {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace somnb
