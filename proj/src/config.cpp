#include "fsrs/config.hpp"

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

#include "fsrs/constants.hpp"
#include "fsrs/errors.hpp"

namespace fsrs::io {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (trim(value.substr(pos)).empty()) return v;
    } catch (const std::exception&) {
    }
    throw ConfigError(key + ": expected a number, got '" + value + "'");
}

long parse_long(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const long v = std::stol(value, &pos);
        if (trim(value.substr(pos)).empty()) return v;
    } catch (const std::exception&) {
    }
    throw ConfigError(key + ": expected an integer, got '" + value + "'");
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw ConfigError(key + ": expected true/false, got '" + value + "'");
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
    std::string spaced = value;
    for (char& c : spaced)
        if (c == ',') c = ' ';
    std::istringstream in(spaced);
    std::vector<double> out;
    std::string tok;
    while (in >> tok) out.push_back(parse_double(key, tok));
    if (out.empty()) throw ConfigError(key + ": expected at least one number");
    return out;
}

// A single number broadcasts to one entry per molecule once N is known.
void broadcast(std::vector<double>& v, int n) {
    if (n >= 2 && v.size() == 1) v.assign(static_cast<std::size_t>(n), v[0]);
}

void finalize_lists(ScenarioConfig& cfg) {
    const int n = cfg.system.n_molecules;
    broadcast(cfg.system.molecular_dipoles, n);
    broadcast(cfg.system.near_edge_energies, n);
    broadcast(cfg.system.near_edge_dipoles, n);
    if (cfg.system.ct_dipoles) broadcast(*cfg.system.ct_dipoles, n);
}

}  // namespace

void apply_override(ScenarioConfig& cfg, const std::string& key, const std::string& value,
                    const std::string& provenance) {
    auto tag = [&](const std::string& k) { cfg.provenance[k] = provenance; };

    if (key == "scenario")
        throw ConfigError("scenario: must appear before other keys (it selects the base)");
    else if (key == "system.n_molecules")
        cfg.system.n_molecules = static_cast<int>(parse_long(key, value));
    else if (key == "system.omega_exciton")
        cfg.system.omega_exciton = parse_double(key, value);
    else if (key == "system.omega_cavity")
        cfg.system.omega_cavity = parse_double(key, value);
    else if (key == "system.coupling_g")
        cfg.system.coupling_g = parse_double(key, value);
    else if (key == "system.exciton_interaction_u")
        cfg.system.exciton_interaction_u = parse_double(key, value);
    else if (key == "system.molecular_dipoles")
        cfg.system.molecular_dipoles = parse_list(key, value);
    else if (key == "system.near_edge_energies")
        cfg.system.near_edge_energies = parse_list(key, value);
    else if (key == "system.near_edge_dipoles")
        cfg.system.near_edge_dipoles = parse_list(key, value);
    else if (key == "system.ct_energy")
        cfg.system.ct_energy = parse_double(key, value);
    else if (key == "system.ct_dipoles")
        cfg.system.ct_dipoles = parse_list(key, value);
    else if (key == "bath.lambda0")
        cfg.bath.lambda0 = parse_double(key, value);
    else if (key == "bath.gamma0")
        cfg.bath.gamma0 = parse_double(key, value);
    else if (key == "bath.temperature")
        cfg.bath.temperature = parse_double(key, value);
    else if (key == "bath.extra_dephasing")
        cfg.bath.extra_dephasing = parse_double(key, value);
    else if (key == "pulses.t1")
        cfg.pulses.t1 = parse_double(key, value);
    else if (key == "pulses.t1_prime")
        cfg.pulses.t1_prime = parse_double(key, value);
    else if (key == "pulses.t2")
        cfg.pulses.t2 = parse_double(key, value);
    else if (key == "pulses.t3")
        cfg.pulses.t3 = parse_double(key, value);
    else if (key == "pulses.w1")
        cfg.pulses.w1 = parse_double(key, value);
    else if (key == "pulses.w2")
        cfg.pulses.w2 = parse_double(key, value);
    else if (key == "pulses.w3")
        cfg.pulses.w3 = parse_double(key, value);
    else if (key == "pulses.s1")
        cfg.pulses.s1 = parse_double(key, value);
    else if (key == "pulses.s2")
        cfg.pulses.s2 = parse_double(key, value);
    else if (key == "pulses.s3")
        cfg.pulses.s3 = parse_double(key, value);
    else if (key == "pulses.delta")  // Raman detuning in rad/ps; rewrites w2
        cfg.pulses.w2 = cfg.pulses.w3 + radps_to_ev(parse_double(key, value));
    else if (key == "grids.shift.min")
        cfg.shift_axis.min = parse_double(key, value);
    else if (key == "grids.shift.max")
        cfg.shift_axis.max = parse_double(key, value);
    else if (key == "grids.shift.step")
        cfg.shift_axis.step = parse_double(key, value);
    else if (key == "grids.pump.min")
        cfg.pump_axis.min = parse_double(key, value);
    else if (key == "grids.pump.max")
        cfg.pump_axis.max = parse_double(key, value);
    else if (key == "grids.pump.step")
        cfg.pump_axis.step = parse_double(key, value);
    else if (key == "grids.delays")
        cfg.delays = parse_list(key, value);
    else if (key == "trajectory.t_max")
        cfg.trajectory_t_max = parse_double(key, value);
    else if (key == "trajectory.t_step")
        cfg.trajectory_t_step = parse_double(key, value);
    else if (key == "run.max_points") {
        const long v = parse_long(key, value);
        if (v <= 0) throw ConfigError("run.max_points must be positive");
        cfg.max_points = static_cast<std::size_t>(v);
    } else if (key == "run.threads") {
        const long v = parse_long(key, value);
        if (v < 0) throw ConfigError("run.threads must be nonnegative");
        cfg.threads = static_cast<int>(v);
    } else if (key == "run.format") {
        if (value == "csv")
            cfg.format = OutputFormat::csv;
        else if (value == "json")
            cfg.format = OutputFormat::json;
        else
            throw ConfigError("run.format: expected csv or json, got '" + value + "'");
    } else if (key == "run.include_2d")
        cfg.include_2d = parse_bool(key, value);
    else
        throw ConfigError("unknown configuration key '" + key + "'");

    // Axis components share one provenance entry.
    if (key.rfind("grids.shift.", 0) == 0)
        tag("grids.shift");
    else if (key.rfind("grids.pump.", 0) == 0)
        tag("grids.pump");
    else
        tag(key);
    finalize_lists(cfg);
}

ScenarioConfig parse_config_text(const std::string& text, ScenarioKind fallback) {
    std::vector<std::pair<std::string, std::string>> pairs;
    std::string scenario_name;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected `key = value`, got '" + line + "'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": empty key or value");
        if (key == "scenario") {
            if (!scenario_name.empty() && scenario_name != value)
                throw ConfigError("scenario: set twice with conflicting values");
            scenario_name = value;
        } else {
            pairs.emplace_back(std::move(key), std::move(value));
        }
    }

    ScenarioConfig cfg = make_scenario(
        scenario_name.empty() ? fallback : scenario_from_string(scenario_name));

    // pulses.delta rewrites w2 from w3, so apply it after any w3 override.
    std::stable_sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
        return (a.first != "pulses.delta") && (b.first == "pulses.delta");
    });
    for (const auto& [key, value] : pairs) apply_override(cfg, key, value);

    if (cfg.scenario == ScenarioKind::custom) {
        static const char* required[] = {
            "system.n_molecules",       "system.omega_exciton",
            "system.omega_cavity",      "system.coupling_g",
            "system.exciton_interaction_u", "system.molecular_dipoles",
            "system.near_edge_energies",    "system.near_edge_dipoles"};
        std::string missing;
        for (const char* k : required) {
            const auto it = cfg.provenance.find(k);
            if (it == cfg.provenance.end() || it->second != "user")
                missing += std::string(missing.empty() ? "" : ", ") + k;
        }
        if (!missing.empty())
            throw ConfigError("custom scenario requires explicit keys: " + missing);
    }

    cfg.validate();
    return cfg;
}

ScenarioConfig load_config(const std::string& path, ScenarioKind fallback) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config file not readable: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), fallback);
}

}  // namespace fsrs::io
