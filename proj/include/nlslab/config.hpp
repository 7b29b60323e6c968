#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nlslab/solver.hpp"

namespace nlslab {

enum class Scenario { simulate, growth_scan, conservation_scan, orbital, symbol_scan, decompose };

std::string to_string(Scenario s);

// Full experiment description. Parsed from an INI-style file with [section]
// headers and key = value lines ('#' comments); every key must be known.
// Values here are the desk-scale defaults; any of them can be replaced from
// the file or with --override section.key=value.
struct ExperimentConfig {
    Scenario scenario = Scenario::simulate;

    // [grid]
    std::size_t num_modes = 2048;
    double box_length = 40.0 * 3.14159265358979323846;

    // [solver]
    SolverConfig solver{1e-3, 10.0, NlsSign::focusing, false, 50, 2};

    // [run]
    double s = 0.5;
    std::uint64_t seed = 1;
    double amplitude = 1.0; // rough-data normalization

    // [simulate]
    std::string initial = "soliton"; // soliton|galilean|plane_wave|rough|perturbed_soliton
    double eps = 0.05;               // galilean boost
    std::int64_t pw_mode = 3;        // plane-wave lattice mode
    double pw_amp = 0.5;             // plane-wave amplitude
    double sigma = 0.01;             // perturbed_soliton size
    double sim_n = 16.0;             // N for e_d/e_i/modulation probes
    std::string probes = "mass,hamiltonian,lyapunov";
    std::string save_state;          // optional final-state dump path

    // [growth]
    double growth_margin = 0.2; // pass gate: slope <= 2 s + margin

    // [conservation]
    std::string energy = "d"; // d | i | sigma
    double delta = 0.1;
    std::vector<double> n_list{8, 16, 32, 64, 128};
    double cons_sigma = 0.05;                      // perturbation size, i-case
    std::vector<double> sigma_list{0.01, 0.02, 0.04, 0.08};
    double cons_n = 16.0;                          // fixed N, sigma-case
    double slope_gate_d = -0.4;
    double slope_gate_i = -0.8;
    double sigma_exponent_tol = 0.3;

    // [orbital]
    std::vector<double> orb_sigma_list{1e-3, 3e-3, 1e-2};
    double t_fit_start = 1.0;
    double drift_margin = 0.3;  // pass gate: exponent <= (1 - s) + margin
    double sigma_margin = 0.2;  // pass gate: |sigma exponent - 1| <= margin
    double orb_n = 16.0;

    // [symbol]
    std::string symbol_mode = "all"; // filter | leibniz | factorization | all
    std::vector<double> n_sop_list{64, 128, 256, 512};
    int samples = 20000;
    double symbol_n = 8.0;

    // [decompose]
    std::string input;     // field CSV path
    double dec_n = 16.0;
};

/// Scenario defaults (grid/solver sized so each experiment is desk scale).
ExperimentConfig default_config(Scenario scenario);

/// Parse an INI-style file over the defaults. Unknown sections or keys are
/// ConfigErrors.
ExperimentConfig parse_config_file(const std::string& path, Scenario scenario);

/// Apply one "section.key=value" override.
void apply_override(ExperimentConfig& cfg, const std::string& spec);

/// Cross-field validation (power-of-two grid, dt bound, every N at most
/// half the resolved band, positive sizes...). Throws ConfigError.
void validate(const ExperimentConfig& cfg);

/// Round-trip serialization of the effective config (written next to results
/// so a run is reproducible from its output directory alone).
std::string serialize(const ExperimentConfig& cfg);

} // namespace nlslab
