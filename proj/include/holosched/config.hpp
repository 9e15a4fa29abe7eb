#ifndef HOLOSCHED_CONFIG_HPP
#define HOLOSCHED_CONFIG_HPP

#include <string>

#include "holosched/sim.hpp"

namespace holosched::config {

/// Reads a template from disk. Files ending in .json parse as JSON; anything
/// else parses as the sectioned key/value format (see README). Raises io on
/// unreadable files and parse with file:line context on malformed input.
sim::ScenarioTemplate load_template(const std::string& path);

/// Parses the key/value format; `name` labels diagnostics.
sim::ScenarioTemplate parse_text(const std::string& text, const std::string& name);

/// Parses the JSON form; `name` labels diagnostics.
sim::ScenarioTemplate parse_json_text(const std::string& text, const std::string& name);

} // namespace holosched::config

#endif
