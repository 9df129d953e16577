#pragma once

#include <string_view>

namespace flatlab {

inline constexpr std::string_view kToolName = "flatlab";
inline constexpr std::string_view kVersion = "0.1.0";
inline constexpr int kReportSchema = 1;

}  // namespace flatlab
