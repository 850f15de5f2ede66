#include <filesystem>

#include "privplan/errors.hpp"
#include "privplan/scene.hpp"

namespace privplan {

namespace {

namespace fs = std::filesystem;

fs::path scenario_path(const std::string& name) {
  const fs::path candidates[] = {
      fs::path(PRIVPLAN_SCENARIO_SOURCE_DIR) / (name + ".json"),
      fs::path(PRIVPLAN_SCENARIO_INSTALL_DIR) / (name + ".json"),
  };
  for (const auto& candidate : candidates)
    if (fs::exists(candidate)) return candidate;
  throw IoError("bundled scenario '" + name + "' not found (searched " +
                std::string(PRIVPLAN_SCENARIO_SOURCE_DIR) + " and " +
                std::string(PRIVPLAN_SCENARIO_INSTALL_DIR) + ")");
}

}  // namespace

const char* to_string(BuiltinScenario which) {
  switch (which) {
    case BuiltinScenario::manip_1: return "manip_1";
    case BuiltinScenario::manip_3: return "manip_3";
    case BuiltinScenario::nav_9: return "nav_9";
  }
  throw std::logic_error("unhandled scenario");
}

ScenarioBundle builtin_scenario(BuiltinScenario which) {
  return load_scenario_file(scenario_path(to_string(which)));
}

ScenarioBundle builtin_scenario(const std::string& name) {
  for (auto which : {BuiltinScenario::manip_1, BuiltinScenario::manip_3, BuiltinScenario::nav_9})
    if (name == to_string(which)) return builtin_scenario(which);
  throw ValidationError("unknown builtin scenario '" + name +
                        "' (expected manip_1, manip_3, or nav_9)");
}

}  // namespace privplan
