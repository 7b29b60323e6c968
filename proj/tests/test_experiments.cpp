#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "nlslab/config.hpp"
#include "nlslab/csv.hpp"
#include "nlslab/errors.hpp"
#include "nlslab/experiments.hpp"
#include "nlslab/fit.hpp"
#include "nlslab/ground_state.hpp"
#include "nlslab/norms.hpp"
#include "nlslab/solver.hpp"

using namespace nlslab;
using doctest::Approx;

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) : path(fs::temp_directory_path() / tag) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

} // namespace

TEST_CASE("loglog_fit recovers a known power law") {
    std::vector<double> x = {1.0, 2.0, 4.0, 8.0, 16.0};
    std::vector<double> y;
    for (double v : x) y.push_back(3.0 * std::pow(v, -1.5));
    FitResult fit = loglog_fit(x, y, "powerlaw");
    CHECK(fit.slope == Approx(-1.5).epsilon(1e-12));
    CHECK(fit.intercept == Approx(std::log(3.0)).epsilon(1e-12));
    CHECK(fit.residual < 1e-13);
    CHECK(fit.n_points == 5);
    CHECK(fit.range_lo == 1.0);
    CHECK(fit.range_hi == 16.0);

    FitResult trimmed = loglog_fit(x, y, "powerlaw", true);
    CHECK(trimmed.n_points == 3);
    CHECK(trimmed.slope == Approx(-1.5).epsilon(1e-12));

    std::vector<double> bad = {1.0, -2.0, 4.0, 8.0, 16.0};
    CHECK_THROWS_AS(loglog_fit(x, bad, "bad"), ConfigError);
}

TEST_CASE("fmt_double round-trips exactly") {
    for (double v : {1.0 / 3.0, 1e-300, 2.5, -0.0, 3.141592653589793, 123456789.123456789}) {
        const std::string s = fmt_double(v);
        CHECK(std::stod(s) == v);
    }
}

TEST_CASE("config: defaults validate, overrides apply, unknown keys rejected") {
    for (Scenario sc : {Scenario::simulate, Scenario::growth_scan, Scenario::conservation_scan,
                        Scenario::orbital, Scenario::symbol_scan}) {
        ExperimentConfig cfg = default_config(sc);
        CHECK_NOTHROW(validate(cfg));
    }

    ExperimentConfig cfg = default_config(Scenario::simulate);
    apply_override(cfg, "solver.dt=5e-4");
    CHECK(cfg.solver.dt == 5e-4);
    apply_override(cfg, "run.seed=99");
    CHECK(cfg.seed == 99);
    apply_override(cfg, "conservation.n_list=4,8,16");
    CHECK(cfg.n_list == std::vector<double>{4.0, 8.0, 16.0});
    CHECK_THROWS_AS(apply_override(cfg, "solver.bogus=1"), ConfigError);
    CHECK_THROWS_AS(apply_override(cfg, "nothing"), ConfigError);
    CHECK_THROWS_AS(apply_override(cfg, "solver.dt=abc"), ConfigError);
}

TEST_CASE("config file parsing: sections, comments, unknown keys, round trip") {
    TempDir tmp("nlslab_cfg_test");
    const fs::path cfg_path = tmp.path / "exp.ini";
    {
        std::ofstream os(cfg_path);
        os << "# comment line\n"
           << "[grid]\n"
           << "num_modes = 512\n"
           << "box_length = 25.132741228718345\n"
           << "[solver]\n"
           << "dt = 1e-4   # inline comment\n"
           << "t_end = 0.5\n"
           << "[run]\n"
           << "s = 0.25\n"
           << "seed = 7\n";
    }
    ExperimentConfig cfg = parse_config_file(cfg_path.string(), Scenario::simulate);
    CHECK(cfg.num_modes == 512);
    CHECK(cfg.solver.dt == 1e-4);
    CHECK(cfg.s == 0.25);
    CHECK(cfg.seed == 7);

    {
        std::ofstream os(cfg_path);
        os << "[grid]\nnum_modez = 512\n";
    }
    CHECK_THROWS_AS(parse_config_file(cfg_path.string(), Scenario::simulate), ConfigError);

    // serialize -> reparse is lossless for the touched fields
    ExperimentConfig base = default_config(Scenario::conservation_scan);
    base.n_list = {8, 32, 128};
    base.cons_sigma = 0.025;
    const fs::path rt = tmp.path / "rt.ini";
    {
        std::ofstream os(rt);
        os << serialize(base);
    }
    ExperimentConfig back = parse_config_file(rt.string(), Scenario::conservation_scan);
    CHECK(back.n_list == base.n_list);
    CHECK(back.cons_sigma == base.cons_sigma);
    CHECK(back.num_modes == base.num_modes);
    CHECK(back.solver.dt == base.solver.dt);
}

TEST_CASE("config validation rejects N beyond half the resolved band") {
    ExperimentConfig cfg = default_config(Scenario::conservation_scan);
    cfg.n_list = {8, 2000};
    CHECK_THROWS_AS(validate(cfg), ConfigError);
}

TEST_CASE("ledger CSV has the exact column schema") {
    EnergyLedger ledger;
    LedgerRow row;
    row.t = 0.5;
    row.mass = 1.25;
    ledger.rows.push_back(row);
    std::ostringstream os;
    ledger.write_csv(os);
    std::istringstream is(os.str());
    std::string header, data;
    std::getline(is, header);
    std::getline(is, data);
    CHECK(header == "t,mass,H,L,E_D,E_I,hs_norm,dist_hs,theta,x0,iw_h1,res0,res1");
    CHECK(data == "0.5,1.25,,,,,,,,,,,");
}

TEST_CASE("field state files round trip") {
    TempDir tmp("nlslab_field_test");
    GridSpec g(64, 24.0 * std::numbers::pi);
    Field q = eval_q(GridSpec(1024, 24.0 * std::numbers::pi));
    const fs::path p = tmp.path / "state.csv";
    write_field_csv(p.string(), q);
    Field back = read_field_csv(p.string());
    CHECK(back.grid().num_modes() == q.grid().num_modes());
    CHECK(l2_norm(back - q) <= 1e-12 * l2_norm(q));
}

TEST_CASE("simulate scenario writes a ledger and reruns byte-identically") {
    TempDir a("nlslab_sim_a"), b("nlslab_sim_b");
    ExperimentConfig cfg = default_config(Scenario::simulate);
    cfg.num_modes = 256;
    cfg.box_length = 8.0 * std::numbers::pi;
    cfg.initial = "rough";
    cfg.solver.dt = 1e-4;
    cfg.solver.t_end = 0.01;
    cfg.solver.record_stride = 20;
    cfg.probes = "mass,hamiltonian,lyapunov,hs";
    cfg.seed = 1234;

    RunReport ra = run_scenario(cfg, a.path.string());
    RunReport rb = run_scenario(cfg, b.path.string());
    CHECK(ra.passed);
    CHECK(rb.passed);
    CHECK(slurp(a.path / "ledger.csv") == slurp(b.path / "ledger.csv"));
    CHECK(slurp(a.path / "config.ini") == slurp(b.path / "config.ini"));

    cfg.seed = 4321;
    TempDir c("nlslab_sim_c");
    run_scenario(cfg, c.path.string());
    CHECK(slurp(a.path / "ledger.csv") != slurp(c.path / "ledger.csv"));
}

TEST_CASE("symbol scan scenario passes its internal gates") {
    TempDir tmp("nlslab_sym_test");
    ExperimentConfig cfg = default_config(Scenario::symbol_scan);
    cfg.samples = 4000;
    RunReport r = run_scenario(cfg, tmp.path.string());
    CHECK(r.passed);
    const std::string scan = slurp(tmp.path / "scan.csv");
    CHECK(scan.rfind("s,N,N_sop,samples,max_ratio,p99_ratio", 0) == 0);
}

TEST_CASE("decompose scenario round trips through a stored field") {
    TempDir tmp("nlslab_dec_test");
    GridSpec g(2048, 24.0 * std::numbers::pi);
    Field member = sample_sigma(GroundStateParams{0.4, 1.5}, g);
    const fs::path state = tmp.path / "member.csv";
    write_field_csv(state.string(), member);

    ExperimentConfig cfg = default_config(Scenario::decompose);
    cfg.num_modes = 2048;
    cfg.input = state.string();
    RunReport r = run_scenario(cfg, tmp.path.string());
    CHECK(r.passed);
    const std::string frame = slurp(tmp.path / "frame.csv");
    CHECK(frame.rfind("theta,x0,iw_h1,res0,res1", 0) == 0);
    // recovered parameters appear in the row
    CHECK(frame.find("0.4") != std::string::npos);
    CHECK(frame.find("1.5") != std::string::npos);
}
