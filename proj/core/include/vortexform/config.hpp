#pragma once

#include <string>

#include "vortexform/sim.hpp"

namespace vortexform {

// INI file with sections [vehicle], [wake], [planner], [outer_loop], [inner_loop], [sim].
// Keys are the symbol names used in the parameter structs. Unknown keys are rejected.
// `[sim] scenario` selects the base scenario; everything else overrides it.
ScenarioConfig load_config(const std::string& path);
ScenarioConfig parse_config(const std::string& text);

}  // namespace vortexform
