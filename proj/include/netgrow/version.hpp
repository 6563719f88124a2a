#pragma once

namespace netgrow {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace netgrow
