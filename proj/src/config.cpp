#include "nlslab/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "nlslab/csv.hpp"
#include "nlslab/errors.hpp"

namespace nlslab {

std::string to_string(Scenario s) {
    switch (s) {
        case Scenario::simulate: return "simulate";
        case Scenario::growth_scan: return "growth-scan";
        case Scenario::conservation_scan: return "conservation-scan";
        case Scenario::orbital: return "orbital";
        case Scenario::symbol_scan: return "symbol-scan";
        case Scenario::decompose: return "decompose";
    }
    return "?";
}

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config: bad numeric value for " + key + ": '" + v + "'");
    }
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const std::uint64_t x = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config: bad integer value for " + key + ": '" + v + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "on") return true;
    if (v == "false" || v == "0" || v == "off") return false;
    throw ConfigError("config: bad boolean value for " + key + ": '" + v + "'");
}

std::vector<double> parse_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(parse_double(key, item));
    }
    if (out.empty()) throw ConfigError("config: empty list for " + key);
    return out;
}

void set_key(ExperimentConfig& cfg, const std::string& section, const std::string& key,
             const std::string& value) {
    const std::string full = section + "." + key;
    if (section == "grid") {
        if (key == "num_modes") cfg.num_modes = parse_u64(full, value);
        else if (key == "box_length") cfg.box_length = parse_double(full, value);
        else throw ConfigError("config: unknown key " + full);
    } else if (section == "solver") {
        if (key == "dt") cfg.solver.dt = parse_double(full, value);
        else if (key == "t_end") cfg.solver.t_end = parse_double(full, value);
        else if (key == "sign") {
            if (value == "focusing") cfg.solver.sign = NlsSign::focusing;
            else if (value == "defocusing") cfg.solver.sign = NlsSign::defocusing;
            else throw ConfigError("config: sign must be focusing or defocusing");
        } else if (key == "dealias") cfg.solver.dealias = parse_bool(full, value);
        else if (key == "record_stride") cfg.solver.record_stride = parse_u64(full, value);
        else if (key == "order") cfg.solver.order = static_cast<int>(parse_u64(full, value));
        else throw ConfigError("config: unknown key " + full);
    } else if (section == "run") {
        if (key == "s") cfg.s = parse_double(full, value);
        else if (key == "seed") cfg.seed = parse_u64(full, value);
        else if (key == "amplitude") cfg.amplitude = parse_double(full, value);
        else throw ConfigError("config: unknown key " + full);
    } else if (section == "simulate") {
        if (key == "initial") cfg.initial = value;
        else if (key == "eps") cfg.eps = parse_double(full, value);
        else if (key == "pw_mode") cfg.pw_mode = static_cast<std::int64_t>(parse_u64(full, value));
        else if (key == "pw_amp") cfg.pw_amp = parse_double(full, value);
        else if (key == "sigma") cfg.sigma = parse_double(full, value);
        else if (key == "n") cfg.sim_n = parse_double(full, value);
        else if (key == "probes") cfg.probes = value;
        else if (key == "save_state") cfg.save_state = value;
        else throw ConfigError("config: unknown key " + full);
    } else if (section == "growth") {
        if (key == "margin") cfg.growth_margin = parse_double(full, value);
        else throw ConfigError("config: unknown key " + full);
    } else if (section == "conservation") {
        if (key == "energy") cfg.energy = value;
        else if (key == "delta") cfg.delta = parse_double(full, value);
        else if (key == "n_list") cfg.n_list = parse_list(full, value);
        else if (key == "sigma") cfg.cons_sigma = parse_double(full, value);
        else if (key == "sigma_list") cfg.sigma_list = parse_list(full, value);
        else if (key == "n") cfg.cons_n = parse_double(full, value);
        else if (key == "slope_gate_d") cfg.slope_gate_d = parse_double(full, value);
        else if (key == "slope_gate_i") cfg.slope_gate_i = parse_double(full, value);
        else if (key == "sigma_exponent_tol") cfg.sigma_exponent_tol = parse_double(full, value);
        else throw ConfigError("config: unknown key " + full);
    } else if (section == "orbital") {
        if (key == "sigma_list") cfg.orb_sigma_list = parse_list(full, value);
        else if (key == "t_fit_start") cfg.t_fit_start = parse_double(full, value);
        else if (key == "drift_margin") cfg.drift_margin = parse_double(full, value);
        else if (key == "sigma_margin") cfg.sigma_margin = parse_double(full, value);
        else if (key == "n") cfg.orb_n = parse_double(full, value);
        else throw ConfigError("config: unknown key " + full);
    } else if (section == "symbol") {
        if (key == "mode") cfg.symbol_mode = value;
        else if (key == "n_sop_list") cfg.n_sop_list = parse_list(full, value);
        else if (key == "samples") cfg.samples = static_cast<int>(parse_u64(full, value));
        else if (key == "n") cfg.symbol_n = parse_double(full, value);
        else throw ConfigError("config: unknown key " + full);
    } else if (section == "decompose") {
        if (key == "input") cfg.input = value;
        else if (key == "n") cfg.dec_n = parse_double(full, value);
        else throw ConfigError("config: unknown key " + full);
    } else {
        throw ConfigError("config: unknown section [" + section + "]");
    }
}

} // namespace

ExperimentConfig default_config(Scenario scenario) {
    ExperimentConfig cfg;
    cfg.scenario = scenario;
    constexpr double pi = std::numbers::pi;
    switch (scenario) {
        case Scenario::simulate:
            break;
        case Scenario::growth_scan:
            cfg.initial = "rough";
            cfg.solver.t_end = 50.0;
            break;
        case Scenario::conservation_scan:
            cfg.num_modes = 1024;
            cfg.box_length = 4.0 * pi;
            cfg.solver.dt = 2e-5;
            cfg.solver.t_end = 0.1;
            cfg.solver.record_stride = 50;
            break;
        case Scenario::orbital:
            cfg.solver.t_end = 20.0;
            cfg.solver.record_stride = 200;
            break;
        case Scenario::symbol_scan:
            cfg.num_modes = 1024;
            cfg.box_length = 4.0 * pi;
            break;
        case Scenario::decompose:
            cfg.num_modes = 4096;
            cfg.box_length = 24.0 * pi;
            break;
    }
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path, Scenario scenario) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    ExperimentConfig cfg = default_config(scenario);
    std::string line, section;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("config: malformed section header at line " +
                                  std::to_string(lineno));
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: expected key = value at line " + std::to_string(lineno));
        if (section.empty())
            throw ConfigError("config: key outside any section at line " + std::to_string(lineno));
        set_key(cfg, section, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

void apply_override(ExperimentConfig& cfg, const std::string& spec) {
    const auto eq = spec.find('=');
    const auto dot = spec.find('.');
    if (eq == std::string::npos || dot == std::string::npos || dot > eq)
        throw ConfigError("override must look like section.key=value, got '" + spec + "'");
    set_key(cfg, trim(spec.substr(0, dot)), trim(spec.substr(dot + 1, eq - dot - 1)),
            trim(spec.substr(eq + 1)));
}

void validate(const ExperimentConfig& cfg) {
    GridSpec grid(cfg.num_modes, cfg.box_length); // throws on bad grid
    // symbol-scan and decompose never integrate in time; their solver block
    // is inert and not held to the dt resolution bound.
    const bool integrates = cfg.scenario == Scenario::simulate ||
                            cfg.scenario == Scenario::growth_scan ||
                            cfg.scenario == Scenario::conservation_scan ||
                            cfg.scenario == Scenario::orbital;
    if (integrates) validate(cfg.solver, grid);
    if (!(cfg.s >= 0.0 && cfg.s < 1.0)) throw ConfigError("config: run.s must lie in [0,1)");
    if (!(cfg.amplitude > 0.0)) throw ConfigError("config: run.amplitude must be positive");
    const double nmax = grid.max_frequency() / 2.0;
    auto check_n = [&](double n, const char* what) {
        if (!(n >= 1.0)) throw ConfigError(std::string("config: ") + what + " must be >= 1");
        if (n > nmax)
            throw ConfigError(std::string("config: ") + what + " = " + fmt_double(n) +
                              " exceeds max resolved frequency / 2 = " + fmt_double(nmax));
    };
    switch (cfg.scenario) {
        case Scenario::simulate: check_n(cfg.sim_n, "simulate.n"); break;
        case Scenario::conservation_scan:
            if (cfg.energy != "d" && cfg.energy != "i" && cfg.energy != "sigma")
                throw ConfigError("config: conservation.energy must be d, i or sigma");
            if (cfg.energy == "sigma") check_n(cfg.cons_n, "conservation.n");
            else
                for (double n : cfg.n_list) check_n(n, "conservation.n_list entry");
            if (!(cfg.delta > 0.0)) throw ConfigError("config: conservation.delta must be > 0");
            break;
        case Scenario::orbital: check_n(cfg.orb_n, "orbital.n"); break;
        case Scenario::symbol_scan: check_n(cfg.symbol_n, "symbol.n"); break;
        case Scenario::decompose: check_n(cfg.dec_n, "decompose.n"); break;
        case Scenario::growth_scan: break;
    }
}

std::string serialize(const ExperimentConfig& cfg) {
    std::ostringstream os;
    os << "[grid]\n"
       << "num_modes = " << cfg.num_modes << "\n"
       << "box_length = " << fmt_double(cfg.box_length) << "\n"
       << "[solver]\n"
       << "dt = " << fmt_double(cfg.solver.dt) << "\n"
       << "t_end = " << fmt_double(cfg.solver.t_end) << "\n"
       << "sign = " << (cfg.solver.sign == NlsSign::focusing ? "focusing" : "defocusing") << "\n"
       << "dealias = " << (cfg.solver.dealias ? "true" : "false") << "\n"
       << "record_stride = " << cfg.solver.record_stride << "\n"
       << "order = " << cfg.solver.order << "\n"
       << "[run]\n"
       << "s = " << fmt_double(cfg.s) << "\n"
       << "seed = " << cfg.seed << "\n"
       << "amplitude = " << fmt_double(cfg.amplitude) << "\n";
    auto list = [](const std::vector<double>& v) {
        std::string out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) out += ",";
            out += fmt_double(v[i]);
        }
        return out;
    };
    switch (cfg.scenario) {
        case Scenario::simulate:
            os << "[simulate]\n"
               << "initial = " << cfg.initial << "\n"
               << "eps = " << fmt_double(cfg.eps) << "\n"
               << "pw_mode = " << cfg.pw_mode << "\n"
               << "pw_amp = " << fmt_double(cfg.pw_amp) << "\n"
               << "sigma = " << fmt_double(cfg.sigma) << "\n"
               << "n = " << fmt_double(cfg.sim_n) << "\n"
               << "probes = " << cfg.probes << "\n";
            if (!cfg.save_state.empty()) os << "save_state = " << cfg.save_state << "\n";
            break;
        case Scenario::growth_scan:
            os << "[growth]\nmargin = " << fmt_double(cfg.growth_margin) << "\n";
            break;
        case Scenario::conservation_scan:
            os << "[conservation]\n"
               << "energy = " << cfg.energy << "\n"
               << "delta = " << fmt_double(cfg.delta) << "\n"
               << "n_list = " << list(cfg.n_list) << "\n"
               << "sigma = " << fmt_double(cfg.cons_sigma) << "\n"
               << "sigma_list = " << list(cfg.sigma_list) << "\n"
               << "n = " << fmt_double(cfg.cons_n) << "\n"
               << "slope_gate_d = " << fmt_double(cfg.slope_gate_d) << "\n"
               << "slope_gate_i = " << fmt_double(cfg.slope_gate_i) << "\n"
               << "sigma_exponent_tol = " << fmt_double(cfg.sigma_exponent_tol) << "\n";
            break;
        case Scenario::orbital:
            os << "[orbital]\n"
               << "sigma_list = " << list(cfg.orb_sigma_list) << "\n"
               << "t_fit_start = " << fmt_double(cfg.t_fit_start) << "\n"
               << "drift_margin = " << fmt_double(cfg.drift_margin) << "\n"
               << "sigma_margin = " << fmt_double(cfg.sigma_margin) << "\n"
               << "n = " << fmt_double(cfg.orb_n) << "\n";
            break;
        case Scenario::symbol_scan:
            os << "[symbol]\n"
               << "mode = " << cfg.symbol_mode << "\n"
               << "n_sop_list = " << list(cfg.n_sop_list) << "\n"
               << "samples = " << cfg.samples << "\n"
               << "n = " << fmt_double(cfg.symbol_n) << "\n";
            break;
        case Scenario::decompose:
            os << "[decompose]\n";
            if (!cfg.input.empty()) os << "input = " << cfg.input << "\n";
            os << "n = " << fmt_double(cfg.dec_n) << "\n";
            break;
    }
    return os.str();
}

} // namespace nlslab
