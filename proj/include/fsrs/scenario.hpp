#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "fsrs/bath.hpp"
#include "fsrs/pulses.hpp"
#include "fsrs/system.hpp"

namespace fsrs::io {

// Canned parameter sets.  The first four inject the published cyanine-dye
// J-aggregate constants (N = 10, omega = 1.84 eV, U = 0.02 eV,
// g sqrt(N) = 0.05 sqrt(2) eV, delta = 243 rad/ps, sigma_2 = 1 ps,
// sigma_3 = 35 fs, cavity detuned by 0 or +-1.25 g, E_ct = 1.6 eV); custom
// starts empty and requires every system key in the config file.
enum class ScenarioKind { zero_detuning, detuned_plus, detuned_minus, charge_transfer, custom };

std::string to_string(ScenarioKind kind);
ScenarioKind scenario_from_string(const std::string& name);  // throws ConfigError

// Inclusive uniform axis [min, max] with spacing step.
struct AxisSpec {
    double min = 0.0;
    double max = 0.0;
    double step = 1.0;
    std::vector<double> values() const;
    void validate(const std::string& key) const;  // throws ConfigError
};

enum class OutputFormat { csv, json };

// Everything a run needs, plus a provenance tag per dotted parameter key:
// "scenario" = injected by the canned scenario, "default" = library design
// default, "user" = explicit config override.  The manifest echoes the map.
struct ScenarioConfig {
    ScenarioKind scenario = ScenarioKind::detuned_plus;
    core::SystemSpec system;
    bath::BathSpec bath;
    response::PulseSpec pulses;

    AxisSpec shift_axis;              // Raman shift (rad/ps)
    AxisSpec pump_axis;               // pump frequency omega_0 (rad/ps), 2D only
    std::vector<double> delays;       // spectrum panels (ps)
    double trajectory_t_max = 20.0;   // resolver comparison grid (ps)
    double trajectory_t_step = 0.25;  // (ps)

    std::size_t max_points = 50'000'000;  // grid-evaluation budget
    int threads = 0;                      // 0 = FSRS_THREADS / hardware
    OutputFormat format = OutputFormat::csv;
    bool include_2d = true;  // emit the pump-resolved cube from `simulate`

    std::map<std::string, std::string> provenance;

    // Cross-field checks beyond the member specs' own validate().
    void validate() const;
};

// Builds the canned configuration for `kind` with provenance filled in.  For
// ScenarioKind::custom the system block is left unset and must be completed
// through config overrides before validate() passes.
ScenarioConfig make_scenario(ScenarioKind kind);

}  // namespace fsrs::io
