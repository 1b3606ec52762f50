#pragma once

#include <string>
#include <vector>

namespace latcode {

inline constexpr const char* artifact_version = "1.0.0";

// Runs one CLI invocation. Deterministic outputs for a fixed (config, seed);
// exit codes: 0 success, 1 input error, 2 resource-budget error.
int dispatch(const std::vector<std::string>& args);

} // namespace latcode
