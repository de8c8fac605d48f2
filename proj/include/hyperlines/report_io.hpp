#pragma once

#include <string>
#include <vector>

#include "hyperlines/incidence.hpp"

namespace hyperlines {

inline constexpr const char* kToolName = "hyperlines";
inline constexpr const char* kToolVersion = "0.1.0";

/// JSON report with fixed key order: tool, version, instance, checks,
/// overall, wall_time_ms. Each check entry carries id, verdict, violations,
/// witnesses, stats, truncated. Two-space indent, trailing newline; only
/// wall_time_ms varies between identical runs.
std::string write_report(const std::string& instance, const std::vector<CheckReport>& checks,
                         long long wall_time_ms);
void write_report_file(const std::string& instance, const std::vector<CheckReport>& checks,
                       long long wall_time_ms, const std::string& path);

}  // namespace hyperlines
