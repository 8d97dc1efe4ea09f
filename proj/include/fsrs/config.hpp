#pragma once

#include <string>

#include "fsrs/scenario.hpp"

namespace fsrs::io {

// Plain-text configuration: one `key = value` pair per line, `#` starts a
// comment, blank lines ignored.  Keys are dotted paths (system.omega_cavity,
// bath.temperature, grids.shift.min, ...); list values are whitespace- or
// comma-separated and a single number broadcasts to the needed length.
// `scenario = <name>` selects the canned base; every other key overrides it
// and is tagged "user" in the provenance map.  Unknown keys throw
// ConfigError naming the key path.
ScenarioConfig parse_config_text(const std::string& text,
                                 ScenarioKind fallback = ScenarioKind::detuned_plus);

// parse_config_text over the file's contents; missing file throws
// ConfigError.  An empty file yields the complete fallback scenario.
ScenarioConfig load_config(const std::string& path,
                           ScenarioKind fallback = ScenarioKind::detuned_plus);

// Applies one dotted-key override in place (exposed for CLI flags / sweeps).
void apply_override(ScenarioConfig& config, const std::string& key, const std::string& value,
                    const std::string& provenance = "user");

}  // namespace fsrs::io
