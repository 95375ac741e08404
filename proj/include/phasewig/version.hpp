#pragma once

namespace phasewig {
inline constexpr const char* kVersion = "0.1.0";
}
