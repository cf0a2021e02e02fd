#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "vaa/simulator.hpp"

namespace vaa {

inline constexpr std::string_view kScenarioSchema = "vaa-scenario/v1";

struct BuiltinScenario {
  std::string name;
  std::string description;
};

[[nodiscard]] const std::vector<BuiltinScenario>& builtin_scenarios();

/// Throws ConfigError for an unknown name.
[[nodiscard]] Scenario builtin_scenario(std::string_view name);

/// Parses a scenario document (schema vaa-scenario/v1). Throws ConfigError
/// with the line/column of a syntax error or the dotted path of a bad field.
[[nodiscard]] Scenario parse_scenario_json(std::string_view text);

/// Built-in names take precedence over file paths.
[[nodiscard]] Scenario load_scenario(const std::string& name_or_path);

/// Serializes a scenario in the v1 schema (rotations as row-major matrices).
[[nodiscard]] std::string scenario_to_json(const Scenario& scenario);

}  // namespace vaa
