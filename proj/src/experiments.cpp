#include "nlslab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nlslab/csv.hpp"
#include "nlslab/errors.hpp"
#include "nlslab/exact_solutions.hpp"
#include "nlslab/fit.hpp"
#include "nlslab/functionals.hpp"
#include "nlslab/ground_state.hpp"
#include "nlslab/modulation.hpp"
#include "nlslab/multilinear.hpp"
#include "nlslab/multiplier.hpp"
#include "nlslab/norms.hpp"
#include "nlslab/random_fields.hpp"

namespace nlslab {

namespace fs = std::filesystem;

void RunReport::gate(const std::string& name, bool ok, const std::string& detail) {
    passed = passed && ok;
    lines.push_back(std::string(ok ? "[pass] " : "[FAIL] ") + name +
                    (detail.empty() ? "" : ": " + detail));
}

void RunReport::note(const std::string& line) { lines.push_back("       " + line); }

namespace {

std::ofstream open_out(const std::string& dir, const std::string& name) {
    fs::create_directories(dir);
    std::ofstream os(fs::path(dir) / name, std::ios::binary);
    if (!os) throw ConfigError("cannot open output file " + name + " in " + dir);
    return os;
}

void dump_config(const ExperimentConfig& cfg, const std::string& out_dir) {
    auto os = open_out(out_dir, "config.ini");
    os << serialize(cfg);
}

std::string fmt(double x) { return fmt_double(x); }

} // namespace

Field make_initial_state(const ExperimentConfig& cfg, const GridSpec& grid) {
    if (cfg.initial == "soliton") return soliton_solution(grid, 0.0);
    if (cfg.initial == "galilean") return galilean_solution(grid, cfg.eps, 0.0);
    if (cfg.initial == "plane_wave")
        return plane_wave_solution(grid, Complex{cfg.pw_amp, 0.0}, cfg.pw_mode, 0.0);
    if (cfg.initial == "rough") return rough_hs_data(grid, cfg.s, cfg.amplitude, cfg.seed);
    if (cfg.initial == "perturbed_soliton") {
        Field p = rough_hs_data(grid, cfg.s, 1.0, cfg.seed);
        return soliton_solution(grid, 0.0) + cfg.sigma * p;
    }
    throw ConfigError("unknown initial state '" + cfg.initial + "'");
}

void write_field_csv(const std::string& path, const Field& f) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ConfigError("cannot open " + path);
    os << f.grid().num_modes() << "," << fmt_double(f.grid().box_length()) << "\n";
    for (std::size_t j = 0; j < f.size(); ++j)
        os << j << "," << fmt_double(f.phys()[j].real()) << ","
           << fmt_double(f.phys()[j].imag()) << "\n";
}

Field read_field_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open field file " + path);
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("empty field file " + path);
    std::size_t m = 0;
    double box = 0.0;
    {
        std::stringstream ss(line);
        std::string a, b;
        if (!std::getline(ss, a, ',') || !std::getline(ss, b))
            throw ConfigError("bad field file header in " + path);
        m = std::stoull(a);
        box = std::stod(b);
    }
    GridSpec grid(m, box);
    std::vector<Complex> v(m);
    std::size_t count = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string a, re, im;
        if (!std::getline(ss, a, ',') || !std::getline(ss, re, ',') || !std::getline(ss, im))
            throw ConfigError("bad field row in " + path);
        const std::size_t j = std::stoull(a);
        if (j >= m) throw ConfigError("field row index out of range in " + path);
        v[j] = Complex{std::stod(re), std::stod(im)};
        ++count;
    }
    if (count != m) throw ConfigError("field file " + path + " has missing rows");
    return Field::from_physical(grid, std::move(v));
}

namespace {

ProbeSet probes_from_string(const ExperimentConfig& cfg) {
    ProbeSet probes;
    std::stringstream ss(cfg.probes);
    std::string item;
    bool want_dist = false, want_mod = false;
    while (std::getline(ss, item, ',')) {
        if (item == "mass") probes.mass = true;
        else if (item == "hamiltonian") probes.hamiltonian = true;
        else if (item == "lyapunov") probes.lyapunov = true;
        else if (item == "hs") probes.hs_s = cfg.s;
        else if (item == "e_d") probes.e_d = std::make_pair(cfg.s, cfg.sim_n);
        else if (item == "e_i") probes.e_i = std::make_pair(cfg.s, cfg.sim_n);
        else if (item == "dist") want_dist = true;
        else if (item == "modulation") want_mod = true;
        else if (!item.empty()) throw ConfigError("unknown probe '" + item + "'");
    }
    if (want_dist || want_mod) {
        const double s = cfg.s, n = cfg.sim_n;
        auto seed = std::make_shared<std::optional<GroundStateParams>>();
        probes.custom = [want_dist, want_mod, s, n, seed](double t, const Field& u,
                                                          LedgerRow& row) {
            if (want_dist) row.dist = dist_hs(u, s).dist;
            if (want_mod) {
                DecomposeResult dr = decompose(u, s, n, *seed);
                if (dr.converged) {
                    *seed = dr.frame->params;
                    row.theta = dr.frame->params.theta - t; // phase excess over e^{it}
                    row.x0 = dr.frame->params.x0;
                    row.iw_h1 = dr.frame->iw_h1;
                    row.res0 = dr.frame->ortho_residuals[0];
                    row.res1 = dr.frame->ortho_residuals[1];
                }
            }
        };
    }
    return probes;
}

} // namespace

RunReport run_simulate(const ExperimentConfig& cfg, const std::string& out_dir) {
    RunReport report;
    GridSpec grid(cfg.num_modes, cfg.box_length);
    Field u0 = make_initial_state(cfg, grid);
    EnergyLedger ledger = evolve(u0, cfg.solver, probes_from_string(cfg));
    {
        auto os = open_out(out_dir, "ledger.csv");
        ledger.write_csv(os);
    }
    if (!cfg.save_state.empty()) {
        // Re-run only the final state (evolve keeps no states unless asked).
        std::vector<Field> states;
        SolverConfig tail = cfg.solver;
        tail.record_stride = std::max<std::size_t>(
            1, static_cast<std::size_t>(std::llround(tail.t_end / tail.dt)));
        evolve(u0, tail, ProbeSet{}, &states);
        write_field_csv(cfg.save_state, states.back());
    }
    report.note("ledger rows: " + std::to_string(ledger.rows.size()));
    return report;
}

RunReport run_growth_scan(const ExperimentConfig& cfg, const std::string& out_dir) {
    RunReport report;
    GridSpec grid(cfg.num_modes, cfg.box_length);
    Field u0 = cfg.initial == "rough" ? rough_hs_data(grid, cfg.s, cfg.amplitude, cfg.seed)
                                      : make_initial_state(cfg, grid);
    ProbeSet probes;
    probes.mass = true;
    probes.hs_s = cfg.s;
    EnergyLedger ledger = evolve(u0, cfg.solver, probes);
    {
        auto os = open_out(out_dir, "ledger.csv");
        ledger.write_csv(os);
    }

    // Running-max envelope of ||u||_{H^s} fitted against t on [1, T]; the
    // growth statement bounds the sup, not the instantaneous value.
    std::vector<double> ts, env;
    double peak = 0.0;
    for (const auto& row : ledger.rows) {
        peak = std::max(peak, *row.hs);
        if (row.t >= 1.0) {
            ts.push_back(row.t);
            env.push_back(peak);
        }
    }
    if (ts.size() < 2) throw ConfigError("growth scan needs t_end > 1 to fit the envelope");
    std::vector<FitResult> fits;
    fits.push_back(loglog_fit(ts, env, "hs_envelope_vs_t", false));
    fits.push_back(loglog_fit(ts, env, "hs_envelope_vs_t_trimmed", true));
    {
        auto os = open_out(out_dir, "fit.csv");
        write_fit_csv(os, fits);
    }
    const double gate = 2.0 * cfg.s + cfg.growth_margin;
    report.gate("growth envelope exponent <= 2s + margin", fits[0].slope <= gate,
                "slope " + fmt(fits[0].slope) + " vs gate " + fmt(gate));
    return report;
}

namespace {

struct IncrementScan {
    std::vector<double> n_values;
    std::vector<double> increments;
    std::vector<double> e0;
    std::vector<bool> flagged; // below roundoff floor, excluded from fits
};

// Max |E_N(t) - E_N(0)| over a [0, delta] window for every N at once.
IncrementScan increment_scan(const Field& u0, const SolverConfig& solver_cfg,
                             const std::vector<double>& n_list, double s, bool use_i_energy) {
    IncrementScan scan;
    scan.n_values = n_list;
    scan.e0.resize(n_list.size());
    scan.increments.assign(n_list.size(), 0.0);

    auto energy = [&](const Field& u, double n) {
        return use_i_energy ? modified_energy_i(u, s, n) : modified_energy_d(u, s, n);
    };
    for (std::size_t i = 0; i < n_list.size(); ++i) scan.e0[i] = energy(u0, n_list[i]);

    ProbeSet probes;
    probes.custom = [&](double t, const Field& u, LedgerRow&) {
        if (t == 0.0) return;
        for (std::size_t i = 0; i < n_list.size(); ++i)
            scan.increments[i] =
                std::max(scan.increments[i], std::abs(energy(u, n_list[i]) - scan.e0[i]));
    };
    evolve(u0, solver_cfg, probes);

    scan.flagged.resize(n_list.size());
    for (std::size_t i = 0; i < n_list.size(); ++i)
        scan.flagged[i] = scan.increments[i] < 1e-12 * std::max(1.0, std::abs(scan.e0[i]));
    return scan;
}

void write_scan_csv(const std::string& out_dir, const std::string& name,
                    const IncrementScan& scan, double delta) {
    auto os = open_out(out_dir, name);
    CsvWriter w(os, {"N", "delta_window", "e0", "max_increment", "flagged"});
    for (std::size_t i = 0; i < scan.n_values.size(); ++i)
        w.row({fmt_double(scan.n_values[i]), fmt_double(delta), fmt_double(scan.e0[i]),
               fmt_double(scan.increments[i]), scan.flagged[i] ? "1" : "0"});
}

// Fit over unflagged points; returns nullopt when fewer than two survive.
std::optional<FitResult> scan_fit(const IncrementScan& scan, const std::string& quantity) {
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < scan.n_values.size(); ++i) {
        if (scan.flagged[i]) continue;
        xs.push_back(scan.n_values[i]);
        ys.push_back(scan.increments[i]);
    }
    if (xs.size() < 2) return std::nullopt;
    return loglog_fit(xs, ys, quantity, false);
}

bool monotone_nonincreasing(const IncrementScan& scan) {
    double prev = -1.0;
    bool first = true;
    for (std::size_t i = 0; i < scan.n_values.size(); ++i) {
        if (scan.flagged[i]) continue;
        if (!first && scan.increments[i] > prev) return false;
        prev = scan.increments[i];
        first = false;
    }
    return true;
}

} // namespace

RunReport run_conservation_scan(const ExperimentConfig& cfg, const std::string& out_dir) {
    RunReport report;
    GridSpec grid(cfg.num_modes, cfg.box_length);
    SolverConfig window_cfg = cfg.solver;
    window_cfg.t_end = cfg.delta;

    std::vector<FitResult> fits;

    if (cfg.energy == "sigma") {
        // Increment size against perturbation size at fixed N (expects
        // quadratic scaling in sigma).
        Field q = soliton_solution(grid, 0.0);
        std::vector<double> incs;
        auto os = open_out(out_dir, "scan.csv");
        CsvWriter w(os, {"sigma", "N", "delta_window", "e0", "max_increment"});
        for (std::size_t i = 0; i < cfg.sigma_list.size(); ++i) {
            Field p = rough_hs_data(grid, cfg.s, 1.0, substream_seed(cfg.seed, 1));
            Field u0 = q + cfg.sigma_list[i] * p;
            IncrementScan scan =
                increment_scan(u0, window_cfg, {cfg.cons_n}, cfg.s, true);
            incs.push_back(scan.increments[0]);
            w.row({fmt_double(cfg.sigma_list[i]), fmt_double(cfg.cons_n),
                   fmt_double(cfg.delta), fmt_double(scan.e0[0]),
                   fmt_double(scan.increments[0])});
        }
        FitResult fit = loglog_fit(cfg.sigma_list, incs, "i_increment_vs_sigma", false);
        fits.push_back(fit);
        report.gate("sigma exponent = 2 +- tol",
                    std::abs(fit.slope - 2.0) <= cfg.sigma_exponent_tol,
                    "exponent " + fmt(fit.slope));
    } else {
        const bool use_i = cfg.energy == "i";
        Field u0 = use_i ? soliton_solution(grid, 0.0) +
                               cfg.cons_sigma * rough_h1_data(grid, 1.0, cfg.seed)
                         : rough_hs_data(grid, cfg.s, cfg.amplitude, cfg.seed);

        IncrementScan scan = increment_scan(u0, window_cfg, cfg.n_list, cfg.s, use_i);
        write_scan_csv(out_dir, "scan.csv", scan, cfg.delta);

        // Mandated robustness rerun on the half window.
        SolverConfig half_cfg = window_cfg;
        half_cfg.t_end = 0.5 * cfg.delta;
        IncrementScan half = increment_scan(u0, half_cfg, cfg.n_list, cfg.s, use_i);
        write_scan_csv(out_dir, "scan_half_window.csv", half, 0.5 * cfg.delta);

        const double gate = use_i ? cfg.slope_gate_i : cfg.slope_gate_d;
        const std::string label = use_i ? "i_increment_vs_N" : "d_increment_vs_N";
        auto fit = scan_fit(scan, label);
        auto fit_half = scan_fit(half, label + "_half_window");
        if (!fit) {
            report.note("all increments at the roundoff floor; fit skipped");
            report.gate("increments identically conserved", true);
        } else {
            fits.push_back(*fit);
            if (fit_half) fits.push_back(*fit_half);
            report.gate("log-log slope <= gate", fit->slope <= gate,
                        "slope " + fmt(fit->slope) + " vs gate " + fmt(gate));
            report.gate("monotone nonincreasing across octaves", monotone_nonincreasing(scan));
            report.gate("conclusion stable under window halving",
                        fit_half && fit_half->slope <= gate,
                        fit_half ? "half-window slope " + fmt(fit_half->slope)
                                 : "half-window fit unavailable");
        }
    }

    if (!fits.empty()) {
        auto os = open_out(out_dir, "fit.csv");
        write_fit_csv(os, fits);
    }
    return report;
}

RunReport run_orbital(const ExperimentConfig& cfg, const std::string& out_dir) {
    RunReport report;
    GridSpec grid(cfg.num_modes, cfg.box_length);
    Field q = soliton_solution(grid, 0.0);
    Field p = rough_hs_data(grid, cfg.s, 1.0, cfg.seed);

    const double s = cfg.s, n = cfg.orb_n;
    std::vector<double> dist_at_end;
    std::vector<FitResult> fits;

    for (std::size_t is = 0; is < cfg.orb_sigma_list.size(); ++is) {
        const double sigma = cfg.orb_sigma_list[is];
        Field u0 = q + sigma * p;

        auto seed = std::make_shared<std::optional<GroundStateParams>>();
        auto basin_exit_at = std::make_shared<std::optional<double>>();
        ProbeSet probes;
        probes.mass = true;
        probes.hs_s = s;
        probes.custom = [s, n, seed, basin_exit_at](double t, const Field& u, LedgerRow& row) {
            row.dist = dist_hs(u, s).dist;
            if (*basin_exit_at) return; // keep tracking distance only
            DecomposeResult dr = decompose(u, s, n, *seed);
            if (!dr.converged) {
                *basin_exit_at = t;
                return;
            }
            *seed = dr.frame->params;
            row.theta = dr.frame->params.theta - t;
            row.x0 = dr.frame->params.x0;
            row.iw_h1 = dr.frame->iw_h1;
            row.res0 = dr.frame->ortho_residuals[0];
            row.res1 = dr.frame->ortho_residuals[1];
        };
        EnergyLedger ledger = evolve(u0, cfg.solver, probes);
        {
            auto os = open_out(out_dir, "ledger_sigma" + std::to_string(is) + ".csv");
            ledger.write_csv(os);
        }
        if (*basin_exit_at)
            report.note("sigma " + fmt(sigma) + ": decomposition basin exit at t = " +
                        fmt(**basin_exit_at) + ", run continued on dist_hs alone");

        // Envelope of dist over [t_fit_start, T].
        std::vector<double> ts, env;
        double peak = 0.0;
        for (const auto& row : ledger.rows) {
            peak = std::max(peak, *row.dist);
            if (row.t >= cfg.t_fit_start) {
                ts.push_back(row.t);
                env.push_back(peak);
            }
        }
        FitResult fit = loglog_fit(ts, env, "dist_envelope_vs_t_sigma" + std::to_string(is));
        fits.push_back(fit);
        dist_at_end.push_back(env.back());
        const double gate = (1.0 - s) + cfg.drift_margin;
        report.gate("drift exponent <= (1-s) + margin [sigma " + fmt(sigma) + "]",
                    fit.slope <= gate, "exponent " + fmt(fit.slope) + " vs gate " + fmt(gate));
    }

    if (cfg.orb_sigma_list.size() >= 2) {
        FitResult sfit = loglog_fit(cfg.orb_sigma_list, dist_at_end, "dist_vs_sigma");
        fits.push_back(sfit);
        report.gate("distance linear in sigma", std::abs(sfit.slope - 1.0) <= cfg.sigma_margin,
                    "exponent " + fmt(sfit.slope));
    }
    {
        auto os = open_out(out_dir, "fit.csv");
        write_fit_csv(os, fits);
    }
    return report;
}

RunReport run_symbol_scan(const ExperimentConfig& cfg, const std::string& out_dir) {
    RunReport report;
    const bool all = cfg.symbol_mode == "all";

    if (all || cfg.symbol_mode == "filter") {
        auto os = open_out(out_dir, "scan.csv");
        CsvWriter w(os, {"s", "N", "N_sop", "samples", "max_ratio", "p99_ratio"});
        double lo = 1e300, hi = 0.0;
        for (std::size_t i = 0; i < cfg.n_sop_list.size(); ++i) {
            FilterScanResult r = filter_bound_scan(cfg.s, cfg.symbol_n, cfg.n_sop_list[i],
                                                   cfg.samples, substream_seed(cfg.seed, i));
            w.row({fmt_double(cfg.s), fmt_double(cfg.symbol_n), fmt_double(cfg.n_sop_list[i]),
                   std::to_string(r.samples_used), fmt_double(r.max_ratio),
                   fmt_double(r.p99_ratio)});
            lo = std::min(lo, r.max_ratio);
            hi = std::max(hi, r.max_ratio);
        }
        report.gate("filter-bound constant stable within 2x across octaves", hi <= 2.0 * lo,
                    "spread " + fmt(hi / lo));
        const double limit = filter_limit_probe(cfg.s, cfg.symbol_n, cfg.n_sop_list.back(), 16);
        report.gate("degenerate-denominator family stays bounded", limit <= 2.0 * hi + 10.0,
                    "limit-family max " + fmt(limit));
    }
    if (all || cfg.symbol_mode == "leibniz") {
        GridSpec grid(cfg.num_modes, cfg.box_length);
        LeibnizScanResult r = leibniz_scan(grid, cfg.s, cfg.symbol_n);
        report.gate("m<.> discrete Leibniz ratio <= 2", r.max_ratio_m_bracket <= 2.0,
                    fmt(r.max_ratio_m_bracket));
        report.gate("theta discrete Leibniz ratio <= 2", r.max_ratio_theta <= 2.0,
                    fmt(r.max_ratio_theta));
    }
    if (all || cfg.symbol_mode == "factorization") {
        Rng rng(substream_seed(cfg.seed, 99));
        double worst = 0.0;
        const int trials = std::max(cfg.samples, 100000);
        for (int i = 0; i < trials; ++i) {
            double xi[4];
            for (int j = 0; j < 3; ++j) xi[j] = rng.uniform(-100.0, 100.0);
            xi[3] = -(xi[0] + xi[1] + xi[2]);
            FactorizationSides sides = factorization_check(std::span<const double, 4>(xi, 4));
            const double scale = std::max({std::abs(sides.lhs), std::abs(sides.rhs), 1.0});
            worst = std::max(worst, std::abs(sides.lhs - sides.rhs) / scale);
        }
        report.gate("factorization identity exact on random hyperplane tuples", worst <= 1e-12,
                    "worst rel dev " + fmt(worst));
    }
    return report;
}

RunReport run_decompose(const ExperimentConfig& cfg, const std::string& out_dir) {
    RunReport report;
    if (cfg.input.empty()) throw ConfigError("decompose: no input field file configured");
    Field u = read_field_csv(cfg.input);
    DecomposeResult dr = decompose(u, cfg.s, cfg.dec_n);
    auto os = open_out(out_dir, "frame.csv");
    CsvWriter w(os, {"theta", "x0", "iw_h1", "res0", "res1"});
    if (dr.converged) {
        const ModulationFrame& f = *dr.frame;
        w.row_numeric({f.params.theta, f.params.x0, f.iw_h1, f.ortho_residuals[0],
                       f.ortho_residuals[1]});
        report.gate("decomposition converged", true,
                    std::to_string(dr.iterations) + " Newton iterations");
    } else {
        report.gate("decomposition converged", false, dr.message);
    }
    return report;
}

RunReport run_scenario(const ExperimentConfig& cfg, const std::string& out_dir) {
    validate(cfg);
    dump_config(cfg, out_dir);
    switch (cfg.scenario) {
        case Scenario::simulate: return run_simulate(cfg, out_dir);
        case Scenario::growth_scan: return run_growth_scan(cfg, out_dir);
        case Scenario::conservation_scan: return run_conservation_scan(cfg, out_dir);
        case Scenario::orbital: return run_orbital(cfg, out_dir);
        case Scenario::symbol_scan: return run_symbol_scan(cfg, out_dir);
        case Scenario::decompose: return run_decompose(cfg, out_dir);
    }
    throw ConfigError("unhandled scenario");
}

} // namespace nlslab
