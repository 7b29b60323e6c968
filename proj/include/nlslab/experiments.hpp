#pragma once

#include <string>
#include <vector>

#include "nlslab/config.hpp"
#include "nlslab/field.hpp"

namespace nlslab {

/// Outcome of one scenario run: per-gate results plus the exit code the CLI
/// should report (0 pass, 1 criteria fail; config/numerical errors surface
/// as exceptions and map to 2/3).
struct RunReport {
    bool passed = true;
    std::vector<std::string> lines; // human-readable gate results

    void gate(const std::string& name, bool ok, const std::string& detail = "");
    void note(const std::string& line);
};

RunReport run_simulate(const ExperimentConfig& cfg, const std::string& out_dir);
RunReport run_growth_scan(const ExperimentConfig& cfg, const std::string& out_dir);
RunReport run_conservation_scan(const ExperimentConfig& cfg, const std::string& out_dir);
RunReport run_orbital(const ExperimentConfig& cfg, const std::string& out_dir);
RunReport run_symbol_scan(const ExperimentConfig& cfg, const std::string& out_dir);
RunReport run_decompose(const ExperimentConfig& cfg, const std::string& out_dir);

/// Dispatch on cfg.scenario. Writes the effective config into
/// out_dir/config.ini next to the result CSVs.
RunReport run_scenario(const ExperimentConfig& cfg, const std::string& out_dir);

/// Field state file helpers (CSV: header line "num_modes,box_length", then
/// "index,re,im" rows).
void write_field_csv(const std::string& path, const Field& f);
Field read_field_csv(const std::string& path);

/// Initial data shared by the runners.
Field make_initial_state(const ExperimentConfig& cfg, const GridSpec& grid);

} // namespace nlslab
