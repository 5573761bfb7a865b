#pragma once

#include <string_view>

namespace wolff {

inline constexpr std::string_view kLibraryName = "wolff-trace";
inline constexpr std::string_view kLibraryVersion = "1.0.0";
inline constexpr std::string_view kInstanceSchema = "wolff-trace/1";

} // namespace wolff
