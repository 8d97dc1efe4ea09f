#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fsrs/resolver.hpp"
#include "fsrs/scenario.hpp"
#include "fsrs/spectrum.hpp"

namespace fsrs::io {

// Deterministic "%.9g" rendering used for every CSV number, so identical
// configs produce byte-identical files.
std::string format_double(double v);

// Hex SHA-256 of a file's bytes (recorded in the manifest for every output).
std::string sha256_file(const std::string& path);

// Spectra tables: one row per grid point, columns
//   shift_THz, omega0_THz, delay_ps, total, population, coherence
// (omega0_THz is empty for one-dimensional grids).  Rows follow the storage
// layout: delay outermost, then pump frequency, then shift.
void write_spectra_csv(const std::string& path, const engine::SpectrumGrid& grid);
void write_spectra_json(const std::string& path, const engine::SpectrumGrid& grid);

// Population trajectories: delay_ps, rho_up, rho_ds, rho_lp, source with one
// `master` block followed by one `resolved` block; rho_ds is the aggregate
// over all dark members.
void write_trajectories_csv(const std::string& path,
                            const resolver::ComparisonReport& report);

struct RunArtifacts {
    std::string manifest_path;
    std::vector<std::string> files;  // everything written, manifest last
    bool pass = true;                // resolver/validation verdict where applicable
};

// Full scenario run: builds the model, synthesizes the configured spectra
// (1D, pump-resolved, CT when configured), runs the resolver comparison
// (falling back to the combined-bright inversion when the lines merge), and
// writes a JSON manifest with parameters, provenance, unit convention,
// checksums and runtimes.
RunArtifacts run_scenario(const ScenarioConfig& config, const std::string& out_dir);

// Resolver-only run: comparison report against the master equation, written
// as JSON and echoed to `log`.  pass reflects the deviation tolerance.
RunArtifacts run_resolve(const ScenarioConfig& config, const std::string& out_dir,
                         resolver::Variant variant, int slice_state, std::ostream& log);

// Cartesian sweep over detuning (in units of g) and bath temperature (K);
// each point becomes a subdirectory with its own manifest, indexed by
// sweep_index.json.
struct SweepRequest {
    std::vector<double> detunings_g;     // empty -> {-1.25, 0, +1.25}
    std::vector<double> temperatures_k;  // empty -> {config value}
};
RunArtifacts run_sweep(const ScenarioConfig& base, const SweepRequest& request,
                       const std::string& out_dir, std::ostream& log);

// Invariant suite against the given configuration; prints one PASS/FAIL line
// per check and returns whether all passed.
bool run_validate(const ScenarioConfig& config, std::ostream& log);

}  // namespace fsrs::io
