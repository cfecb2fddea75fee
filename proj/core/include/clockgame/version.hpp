#pragma once

namespace clockgame {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace clockgame
