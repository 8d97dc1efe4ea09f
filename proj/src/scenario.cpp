#include "fsrs/scenario.hpp"

#include <cmath>

#include "fsrs/constants.hpp"
#include "fsrs/errors.hpp"

namespace fsrs::io {

std::string to_string(ScenarioKind kind) {
    switch (kind) {
        case ScenarioKind::zero_detuning: return "zero_detuning";
        case ScenarioKind::detuned_plus: return "detuned_plus";
        case ScenarioKind::detuned_minus: return "detuned_minus";
        case ScenarioKind::charge_transfer: return "charge_transfer";
        case ScenarioKind::custom: return "custom";
    }
    throw ComputeError("to_string: unhandled scenario kind");
}

ScenarioKind scenario_from_string(const std::string& name) {
    for (ScenarioKind k : {ScenarioKind::zero_detuning, ScenarioKind::detuned_plus,
                           ScenarioKind::detuned_minus, ScenarioKind::charge_transfer,
                           ScenarioKind::custom}) {
        if (name == to_string(k)) return k;
    }
    throw ConfigError("scenario: unknown name '" + name +
                      "' (expected zero_detuning, detuned_plus, detuned_minus, "
                      "charge_transfer or custom)");
}

std::vector<double> AxisSpec::values() const {
    validate("axis");
    std::vector<double> v;
    const auto count = static_cast<std::size_t>(std::floor((max - min) / step + 0.5)) + 1;
    v.reserve(count);
    for (std::size_t i = 0; i < count; ++i) v.push_back(min + static_cast<double>(i) * step);
    return v;
}

void AxisSpec::validate(const std::string& key) const {
    if (!(step > 0.0)) throw ConfigError(key + ".step must be positive");
    if (!(max >= min)) throw ConfigError(key + ".max must be >= " + key + ".min");
}

void ScenarioConfig::validate() const {
    system.validate();
    bath.validate();
    pulses.validate();
    shift_axis.validate("grids.shift");
    pump_axis.validate("grids.pump");
    if (delays.empty()) throw ConfigError("grids.delays must contain at least one delay");
    for (double d : delays)
        if (d < 0.0) throw ConfigError("grids.delays entries must be nonnegative");
    if (!(trajectory_t_max > 0.0)) throw ConfigError("trajectory.t_max must be positive");
    if (!(trajectory_t_step > 0.0)) throw ConfigError("trajectory.t_step must be positive");
    if (trajectory_t_step > trajectory_t_max)
        throw ConfigError("trajectory.t_step must not exceed trajectory.t_max");
    if (max_points == 0) throw ConfigError("run.max_points must be positive");
    if (threads < 0) throw ConfigError("run.threads must be nonnegative");
}

namespace {

void tag_block(std::map<std::string, std::string>& prov,
               std::initializer_list<const char*> keys, const char* source) {
    for (const char* k : keys) prov[k] = source;
}

}  // namespace

ScenarioConfig make_scenario(ScenarioKind kind) {
    ScenarioConfig cfg;
    cfg.scenario = kind;

    // Design defaults shared by every scenario.
    cfg.pulses.w1 = 1.84;
    cfg.pulses.w3 = 2.40;
    cfg.pulses.w2 = cfg.pulses.w3;  // detuning applied below
    cfg.shift_axis = {40.0, 260.0, 0.5};
    cfg.pump_axis = {2600.0, 2950.0, 2.5};
    cfg.delays = {0.03, 0.5, 1.0, 5.0, 20.0};
    tag_block(cfg.provenance,
              {"bath.lambda0", "bath.gamma0", "bath.temperature", "bath.extra_dephasing",
               "pulses.w1", "pulses.w2", "pulses.w3", "pulses.s1", "pulses.t1",
               "pulses.t1_prime", "pulses.t2", "pulses.t3", "system.near_edge_energies",
               "system.near_edge_dipoles", "grids.shift", "grids.pump", "grids.delays",
               "trajectory.t_max", "trajectory.t_step", "run.max_points", "run.threads",
               "run.format", "run.include_2d"},
              "default");

    if (kind == ScenarioKind::custom) {
        // Sentinels force explicit values through the config file.
        cfg.system.n_molecules = 0;
        cfg.system.omega_exciton = 0.0;
        cfg.system.omega_cavity = 0.0;
        cfg.system.coupling_g = 0.0;
        cfg.system.exciton_interaction_u = 0.0;
        tag_block(cfg.provenance, {"pulses.s2", "pulses.s3"}, "default");
        return cfg;
    }

    const int n = 10;
    const double omega = 1.84;                            // exciton energy (eV)
    const double g = 0.05 * std::sqrt(2.0 / double(n));   // g sqrt(N) = 0.05 sqrt(2) eV
    cfg.system.n_molecules = n;
    cfg.system.omega_exciton = omega;
    cfg.system.coupling_g = g;
    cfg.system.exciton_interaction_u = 0.02;
    cfg.system.molecular_dipoles.assign(n, 1.0);
    cfg.system.near_edge_energies.assign(n, omega + 2.0);
    cfg.system.near_edge_dipoles.assign(n, 1.0);

    switch (kind) {
        case ScenarioKind::zero_detuning: cfg.system.omega_cavity = omega; break;
        case ScenarioKind::detuned_plus:
        case ScenarioKind::charge_transfer: cfg.system.omega_cavity = omega - 1.25 * g; break;
        case ScenarioKind::detuned_minus: cfg.system.omega_cavity = omega + 1.25 * g; break;
        default: break;
    }
    if (kind == ScenarioKind::charge_transfer) {
        cfg.system.ct_energy = 1.6;
        cfg.system.ct_dipoles = std::vector<double>(n, 1.0);
        cfg.shift_axis = {180.0, 500.0, 0.5};
        tag_block(cfg.provenance, {"system.ct_energy"}, "scenario");
        tag_block(cfg.provenance, {"system.ct_dipoles"}, "default");
    }

    cfg.pulses.s2 = 1.0;
    cfg.pulses.s3 = 0.035;
    cfg.pulses.w2 = cfg.pulses.w3 + radps_to_ev(243.0);  // Raman detuning delta = 243 rad/ps

    tag_block(cfg.provenance,
              {"system.n_molecules", "system.omega_exciton", "system.omega_cavity",
               "system.coupling_g", "system.exciton_interaction_u",
               "system.molecular_dipoles", "pulses.s2", "pulses.s3", "pulses.delta"},
              "scenario");
    return cfg;
}

}  // namespace fsrs::io
