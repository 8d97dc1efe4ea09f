#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "fsrs/config.hpp"
#include "fsrs/constants.hpp"
#include "fsrs/errors.hpp"
#include "fsrs/output.hpp"
#include "fsrs/scenario.hpp"
#include "fsrs/spectrum.hpp"
#include "test_helpers.hpp"

using namespace fsrs;
namespace fs = std::filesystem;
using nlohmann::json;
using testutil::contains;
using testutil::thrown_message;

namespace {

fs::path fresh_dir(const std::string& tag) {
    static int counter = 0;
    const fs::path dir = fs::temp_directory_path() /
                         ("fsrs_cli_test_" + std::to_string(::getpid()) + "_" + tag + "_" +
                          std::to_string(counter++));
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    REQUIRE(out.good());
    out << text;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Runs the installed CLI binary; returns its exit code.
int run_cli(const std::string& args, const fs::path& log) {
    const std::string cmd =
        std::string(FSRS_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
}

// Small, fast scenario for end-to-end runs: coarse 1D grid, no pump axis.
const char* small_config =
    "# compact run for the test suite\n"
    "scenario = detuned_plus\n"
    "grids.shift.min = 60\n"
    "grids.shift.max = 230\n"
    "grids.shift.step = 2.0\n"
    "grids.delays = 0.03, 5\n"
    "trajectory.t_max = 2\n"
    "trajectory.t_step = 0.5\n"
    "run.include_2d = false\n";

}  // namespace

TEST_CASE("canned scenarios inject the aggregate constants with provenance tags") {
    const auto cfg = io::make_scenario(io::ScenarioKind::detuned_plus);
    CHECK(cfg.system.n_molecules == 10);
    CHECK(cfg.system.omega_exciton == doctest::Approx(1.84));
    CHECK(cfg.system.coupling_g == doctest::Approx(0.0223606797).epsilon(1e-8));
    CHECK(cfg.system.omega_cavity ==
          doctest::Approx(1.84 - 1.25 * cfg.system.coupling_g).epsilon(1e-12));
    CHECK(cfg.system.exciton_interaction_u == doctest::Approx(0.02));
    CHECK(cfg.pulses.s2 == doctest::Approx(1.0));
    CHECK(cfg.pulses.s3 == doctest::Approx(0.035));
    CHECK(cfg.pulses.delta_radps() == doctest::Approx(243.0).epsilon(1e-9));
    CHECK(cfg.shift_axis.min == doctest::Approx(40.0));
    CHECK(cfg.shift_axis.max == doctest::Approx(260.0));
    CHECK(cfg.delays.size() == 5);
    CHECK_FALSE(cfg.system.ct_energy.has_value());
    CHECK(cfg.provenance.at("system.omega_cavity") == "scenario");
    CHECK(cfg.provenance.at("bath.lambda0") == "default");
    CHECK_NOTHROW(cfg.validate());

    const auto minus = io::make_scenario(io::ScenarioKind::detuned_minus);
    CHECK(minus.system.omega_cavity ==
          doctest::Approx(1.84 + 1.25 * minus.system.coupling_g).epsilon(1e-12));
    const auto zero = io::make_scenario(io::ScenarioKind::zero_detuning);
    CHECK(zero.system.omega_cavity == doctest::Approx(1.84));

    const auto ct = io::make_scenario(io::ScenarioKind::charge_transfer);
    REQUIRE(ct.system.ct_energy.has_value());
    CHECK(*ct.system.ct_energy == doctest::Approx(1.6));
    CHECK(ct.shift_axis.max == doctest::Approx(500.0));
    CHECK(ct.provenance.at("system.ct_energy") == "scenario");

    CHECK_THROWS_AS(io::make_scenario(io::ScenarioKind::custom).validate(), ConfigError);
}

TEST_CASE("scenario names round-trip and reject unknown values") {
    using io::ScenarioKind;
    for (auto kind : {ScenarioKind::zero_detuning, ScenarioKind::detuned_plus,
                      ScenarioKind::detuned_minus, ScenarioKind::charge_transfer,
                      ScenarioKind::custom})
        CHECK(io::scenario_from_string(io::to_string(kind)) == kind);
    CHECK_THROWS_AS((void)io::scenario_from_string("resonant"), ConfigError);
}

TEST_CASE("config text: comments, overrides, lists and provenance") {
    const std::string text =
        "# a comment line\n"
        "\n"
        "scenario = detuned_minus\n"
        "bath.temperature = 77   # trailing comment\n"
        "grids.delays = 0.1, 1, 10\n"
        "run.threads = 2\n";
    const auto cfg = io::parse_config_text(text);
    CHECK(cfg.scenario == io::ScenarioKind::detuned_minus);
    CHECK(cfg.bath.temperature == doctest::Approx(77.0));
    CHECK(cfg.provenance.at("bath.temperature") == "user");
    CHECK(cfg.provenance.at("bath.gamma0") == "default");
    REQUIRE(cfg.delays.size() == 3);
    CHECK(cfg.delays[2] == doctest::Approx(10.0));
    CHECK(cfg.threads == 2);

    // An empty file is exactly the fallback scenario.
    const auto empty = io::parse_config_text("", io::ScenarioKind::zero_detuning);
    const auto canned = io::make_scenario(io::ScenarioKind::zero_detuning);
    CHECK(empty.system.omega_cavity == canned.system.omega_cavity);
    CHECK(empty.provenance == canned.provenance);
}

TEST_CASE("config text: malformed input produces named errors") {
    CHECK(contains(thrown_message<ConfigError>(
                       [] { (void)io::parse_config_text("bath.lambda = 1\n"); }),
                   "bath.lambda"));
    CHECK(contains(thrown_message<ConfigError>(
                       [] { (void)io::parse_config_text("pulses.s2 = -1\n"); }),
                   "s2"));
    CHECK(contains(thrown_message<ConfigError>(
                       [] { (void)io::parse_config_text("bath.temperature = warm\n"); }),
                   "bath.temperature"));
    CHECK_THROWS_AS(
        (void)io::parse_config_text("scenario = detuned_plus\nscenario = detuned_minus\n"),
        ConfigError);
    CHECK_THROWS_AS((void)io::parse_config_text("bath.temperature\n"), ConfigError);
}

TEST_CASE("config text: custom scenario demands the full system block") {
    const std::string custom =
        "scenario = custom\n"
        "system.n_molecules = 4\n"
        "system.omega_exciton = 2.0\n"
        "system.omega_cavity = 1.95\n"
        "system.coupling_g = 0.02\n"
        "system.exciton_interaction_u = 0\n"
        "system.molecular_dipoles = 1\n"
        "system.near_edge_energies = 4.2\n"
        "system.near_edge_dipoles = 0.8\n"
        "pulses.w1 = 2.0\n";
    const auto cfg = io::parse_config_text(custom);
    CHECK(cfg.system.n_molecules == 4);
    // A single value broadcasts across the N molecules.
    REQUIRE(cfg.system.molecular_dipoles.size() == 4);
    CHECK(cfg.system.near_edge_dipoles[3] == doctest::Approx(0.8));
    CHECK_NOTHROW(cfg.validate());

    const std::string incomplete = "scenario = custom\nsystem.n_molecules = 4\n";
    CHECK(contains(thrown_message<ConfigError>([&] { (void)io::parse_config_text(incomplete); }),
                   "system."));
}

TEST_CASE("raman detuning override applies after the carrier frequencies") {
    const std::string text =
        "pulses.delta = 200\n"
        "pulses.w3 = 2.5\n";  // listed after delta, still consistent
    const auto cfg = io::parse_config_text(text);
    CHECK(cfg.pulses.w3 == doctest::Approx(2.5));
    CHECK(cfg.pulses.delta_radps() == doctest::Approx(200.0).epsilon(1e-9));
    CHECK(cfg.provenance.at("pulses.delta") == "user");
}

TEST_CASE("apply_override mirrors the file syntax for single keys") {
    auto cfg = io::make_scenario(io::ScenarioKind::detuned_plus);
    io::apply_override(cfg, "bath.extra_dephasing", "12.5", "sweep");
    CHECK(cfg.bath.extra_dephasing == doctest::Approx(12.5));
    CHECK(cfg.provenance.at("bath.extra_dephasing") == "sweep");
    CHECK_THROWS_AS(io::apply_override(cfg, "bath.nonsense", "1"), ConfigError);
}

TEST_CASE("axis spec: inclusive values and validation") {
    io::AxisSpec axis{40.0, 41.5, 0.5};
    const auto values = axis.values();
    REQUIRE(values.size() == 4);
    CHECK(values.front() == doctest::Approx(40.0));
    CHECK(values.back() == doctest::Approx(41.5));

    axis.step = -1.0;
    CHECK(contains(thrown_message<ConfigError>([&] { axis.validate("grids.shift"); }),
                   "grids.shift"));
}

TEST_CASE("format_double renders deterministically at nine significant digits") {
    CHECK(io::format_double(1.0 / 3.0) == "0.333333333");
    CHECK(io::format_double(1.0) == "1");
    CHECK(io::format_double(-0.5) == "-0.5");
    CHECK(io::format_double(1.23456789e-30) == "1.23456789e-30");
    CHECK(io::format_double(219.013086775) == "219.013087");
}

TEST_CASE("sha256 matches the published test vector") {
    const auto dir = fresh_dir("sha");
    write_file(dir / "abc.txt", "abc");
    CHECK(io::sha256_file((dir / "abc.txt").string()) ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK_THROWS_AS((void)io::sha256_file((dir / "missing").string()), ComputeError);
    fs::remove_all(dir);
}

TEST_CASE("spectra tables serialize in the documented row layout") {
    engine::SpectrumGrid g;
    g.shift_axis = {100.0, 110.0};
    g.delay_axis = {0.5};
    g.pulse_overlap = {1};
    g.total = {1.5, 2.5};
    g.population = {1.0, 2.0};
    g.coherence = {0.5, 0.5};

    const auto dir = fresh_dir("csv");
    io::write_spectra_csv((dir / "s.csv").string(), g);
    CHECK(read_file(dir / "s.csv") ==
          "shift_THz,omega0_THz,delay_ps,total,population,coherence\n"
          "100,,0.5,1.5,1,0.5\n"
          "110,,0.5,2.5,2,0.5\n");

    // With a pump axis the omega0 column fills in and pump varies slower
    // than shift.
    g.pump_axis = {2700.0, 2800.0};
    g.total = {1.0, 2.0, 3.0, 4.0};
    g.population = g.total;
    g.coherence = {0.0, 0.0, 0.0, 0.0};
    io::write_spectra_csv((dir / "s2.csv").string(), g);
    CHECK(read_file(dir / "s2.csv") ==
          "shift_THz,omega0_THz,delay_ps,total,population,coherence\n"
          "100,2700,0.5,1,1,0\n"
          "110,2700,0.5,2,2,0\n"
          "100,2800,0.5,3,3,0\n"
          "110,2800,0.5,4,4,0\n");

    io::write_spectra_json((dir / "s.json").string(), g);
    const json parsed = json::parse(read_file(dir / "s.json"));
    CHECK(parsed.at("shift_axis_thz").size() == 2);
    CHECK(parsed.at("pump_axis_thz").size() == 2);
    CHECK(parsed.at("total").size() == 4);
    fs::remove_all(dir);
}

TEST_CASE("trajectory tables carry a master block then a resolved block") {
    resolver::ComparisonReport report;
    resolver::TrajectoryPoint pt;
    pt.delay_ps = 1.0;
    pt.master = {0.5, 0.25, 0.25};
    pt.resolved = {0.5, 0.26, 0.24};
    report.points = {pt};

    const auto dir = fresh_dir("traj");
    io::write_trajectories_csv((dir / "t.csv").string(), report);
    CHECK(read_file(dir / "t.csv") ==
          "delay_ps,rho_up,rho_ds,rho_lp,source\n"
          "1,0.5,0.25,0.25,master\n"
          "1,0.5,0.26,0.24,resolved\n");
    fs::remove_all(dir);
}

TEST_CASE("cli: simulate writes a manifest whose checksums verify") {
    const auto dir = fresh_dir("sim");
    write_file(dir / "run.cfg", small_config);

    const int code = run_cli("simulate --config " + (dir / "run.cfg").string() + " --out " +
                                 (dir / "out").string(),
                             dir / "log");
    CHECK(code == 0);

    const json manifest = json::parse(read_file(dir / "out" / "manifest.json"));
    CHECK(manifest.at("scenario") == "detuned_plus");
    CHECK(manifest.at("parameters").at("bath.temperature") == doctest::Approx(300.0));
    CHECK(manifest.at("provenance").at("grids.shift") == "user");
    CHECK(manifest.at("provenance").at("system.omega_cavity") == "scenario");
    CHECK(manifest.at("resolver").at("pass") == true);
    CHECK(manifest.at("flags").at("resolver_mode") == "full");

    bool saw_spectra = false;
    for (const auto& f : manifest.at("files")) {
        const fs::path path = dir / "out" / f.at("path").get<std::string>();
        CHECK(fs::exists(path));
        CHECK(io::sha256_file(path.string()) == f.at("sha256").get<std::string>());
        CHECK(f.at("bytes").get<std::uint64_t>() == fs::file_size(path));
        if (f.at("path") == "spectra_1d.csv") saw_spectra = true;
    }
    CHECK(saw_spectra);
    CHECK_FALSE(fs::exists(dir / "out" / "spectra_2d.csv"));  // run.include_2d = false
    fs::remove_all(dir);
}

TEST_CASE("cli: identical configurations produce byte-identical outputs") {
    const auto dir = fresh_dir("det");
    write_file(dir / "run.cfg", small_config);
    const std::string base = "simulate --config " + (dir / "run.cfg").string();
    REQUIRE(run_cli(base + " --out " + (dir / "a").string(), dir / "log_a") == 0);
    REQUIRE(run_cli(base + " --out " + (dir / "b").string(), dir / "log_b") == 0);
    CHECK(read_file(dir / "a" / "spectra_1d.csv") == read_file(dir / "b" / "spectra_1d.csv"));
    CHECK(read_file(dir / "a" / "trajectories.csv") == read_file(dir / "b" / "trajectories.csv"));
    fs::remove_all(dir);
}

TEST_CASE("cli: exit codes distinguish configuration from computation failures") {
    const auto dir = fresh_dir("exit");

    // Usage errors and invalid configurations exit 2.
    CHECK(run_cli("", dir / "log0") == 2);
    CHECK(run_cli("simulate --scenario bogus --out " + (dir / "x").string(), dir / "log1") == 2);
    write_file(dir / "bad.cfg", "bath.lambda = 1\n");
    CHECK(run_cli("simulate --config " + (dir / "bad.cfg").string() + " --out " +
                      (dir / "y").string(),
                  dir / "log2") == 2);
    const std::string log2 = read_file(dir / "log2");
    CHECK(contains(log2, "bath.lambda"));

    // The invariant suite passes on the canned detuned scenarios.
    CHECK(run_cli("validate --scenario detuned_minus", dir / "log3") == 0);
    const std::string log3 = read_file(dir / "log3");
    CHECK(contains(log3, "PASS"));
    CHECK_FALSE(contains(log3, "FAIL"));

    // Resolver comparison on a fast trajectory grid exits by verdict.
    write_file(dir / "res.cfg",
               "scenario = detuned_plus\ntrajectory.t_max = 2\ntrajectory.t_step = 0.5\n");
    CHECK(run_cli("resolve --config " + (dir / "res.cfg").string() + " --variant 2d --slice up" +
                      " --out " + (dir / "r").string(),
                  dir / "log4") == 0);
    const json report = json::parse(read_file(dir / "r" / "resolve_report.json"));
    CHECK(report.at("report").at("variant") == "2d");
    CHECK(report.at("report").at("pass") == true);
    CHECK(fs::exists(dir / "r" / "trajectories.csv"));
    fs::remove_all(dir);
}

TEST_CASE("cli: zero-detuning resolve falls back to the combined bright population") {
    const auto dir = fresh_dir("merged");
    write_file(dir / "run.cfg",
               "scenario = zero_detuning\ntrajectory.t_max = 2\ntrajectory.t_step = 0.5\n");
    CHECK(run_cli("resolve --config " + (dir / "run.cfg").string() + " --out " +
                      (dir / "out").string(),
                  dir / "log") == 0);
    const json report = json::parse(read_file(dir / "out" / "resolve_report.json"));
    CHECK(report.at("report").contains("max_abs_dev_bright"));
    CHECK(report.at("report").at("max_abs_dev_bright").get<double>() < 0.05);
    CHECK(report.at("report").at("pass") == true);
    CHECK(fs::exists(dir / "out" / "bright_combined.csv"));
    fs::remove_all(dir);
}
