#pragma once

namespace substrate {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kReportSchema = "substrate.report/1";
inline constexpr const char* kScenarioSchema = "substrate.scenario/1";

} // namespace substrate
