// fsrs: polariton femtosecond stimulated Raman simulator and population
// resolver.  Subcommands: simulate, resolve, sweep, validate.  Exit codes:
// 0 success, 1 computation failure / verdict over tolerance, 2 usage or
// configuration error.
#include <CLI11.hpp>
#include <iostream>
#include <string>
#include <vector>

#include "fsrs/config.hpp"
#include "fsrs/errors.hpp"
#include "fsrs/output.hpp"
#include "fsrs/resolver.hpp"

namespace {

fsrs::io::ScenarioConfig assemble_config(const std::string& config_path,
                                         const std::string& scenario_name, int threads,
                                         const std::string& format) {
    using namespace fsrs::io;
    const ScenarioKind fallback = scenario_name.empty()
                                      ? ScenarioKind::detuned_plus
                                      : scenario_from_string(scenario_name);
    ScenarioConfig cfg =
        config_path.empty() ? make_scenario(fallback) : load_config(config_path, fallback);
    if (threads >= 0) apply_override(cfg, "run.threads", std::to_string(threads));
    if (!format.empty()) apply_override(cfg, "run.format", format);
    cfg.validate();
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fsrs: cavity-polariton femtosecond stimulated Raman spectra and "
                 "population resolution"};
    app.require_subcommand(1);

    std::string config_path, scenario_name, format;
    std::string out_dir = "fsrs_run";
    int threads = -1;

    const std::vector<std::string> scenario_names = {
        "zero_detuning", "detuned_plus", "detuned_minus", "charge_transfer", "custom"};
    auto add_common = [&](CLI::App* sub, bool with_output) {
        sub->add_option("--config", config_path, "configuration file (key = value lines)")
            ->check(CLI::ExistingFile);
        sub->add_option("--scenario", scenario_name, "canned scenario")
            ->check(CLI::IsMember(scenario_names));
        sub->add_option("--threads", threads, "worker threads (0 = FSRS_THREADS/auto)");
        if (with_output) {
            sub->add_option("--out", out_dir, "output directory (default fsrs_run)");
            sub->add_option("--format", format, "spectra format: csv or json")
                ->check(CLI::IsMember({"csv", "json"}));
        }
    };

    CLI::App* simulate =
        app.add_subcommand("simulate", "run a scenario; write spectra, trajectories, manifest");
    add_common(simulate, true);

    CLI::App* resolve = app.add_subcommand(
        "resolve", "invert peak intensities into populations and compare with the "
                   "master equation");
    add_common(resolve, true);
    std::string variant = "1d", slice = "up";
    resolve->add_option("--variant", variant, "1d (broadband pump) or 2d (pump-resolved slice)")
        ->check(CLI::IsMember({"1d", "2d"}));
    resolve->add_option("--slice", slice, "pumped bright state for --variant 2d")
        ->check(CLI::IsMember({"up", "lp"}));

    CLI::App* sweep =
        app.add_subcommand("sweep", "cartesian sweep over detuning and bath temperature");
    add_common(sweep, true);
    std::vector<double> detunings, temperatures;
    sweep->add_option("--detunings", detunings, "cavity detunings in units of g")
        ->delimiter(',');
    sweep->add_option("--temperatures", temperatures, "bath temperatures in K")->delimiter(',');

    CLI::App* validate = app.add_subcommand("validate", "run the invariant suite");
    add_common(validate, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const fsrs::io::ScenarioConfig cfg =
            assemble_config(config_path, scenario_name, threads, format);

        if (app.got_subcommand(simulate)) {
            const fsrs::io::RunArtifacts art = fsrs::io::run_scenario(cfg, out_dir);
            std::cout << art.manifest_path << "\n";
            return 0;
        }
        if (app.got_subcommand(resolve)) {
            const auto v = variant == "2d" ? fsrs::resolver::Variant::two_dimensional
                                           : fsrs::resolver::Variant::one_dimensional;
            int slice_index = -1;
            if (v == fsrs::resolver::Variant::two_dimensional)
                slice_index = slice == "lp" ? 0 : cfg.system.n_molecules;
            const fsrs::io::RunArtifacts art =
                fsrs::io::run_resolve(cfg, out_dir, v, slice_index, std::cout);
            std::cout << art.manifest_path << "\n";
            return art.pass ? 0 : 1;
        }
        if (app.got_subcommand(sweep)) {
            const fsrs::io::SweepRequest req{detunings, temperatures};
            const fsrs::io::RunArtifacts art = fsrs::io::run_sweep(cfg, req, out_dir, std::cout);
            std::cout << art.manifest_path << "\n";
            return 0;
        }
        if (app.got_subcommand(validate))
            return fsrs::io::run_validate(cfg, std::cout) ? 0 : 1;
    } catch (const fsrs::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
