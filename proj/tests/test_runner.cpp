#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "saflow/runner.hpp"

using namespace saflow;

namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.is_open());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "saflow_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("identity-check run: clean pass with artifact summary") {
    const fs::path dir = fresh_dir("identity");
    RunConfig cfg = parse_config(R"(command = identity-check
[geometry]
kind = holomorphic-space-form
n = 2
c = 4.0
[study]
samples = 1000
)");
    cfg.out_dir = dir.string();
    const RunOutcome out = run(cfg);
    REQUIRE(out.exit_code == 0);
    REQUIRE(out.summary["pass"].get<bool>());
    REQUIRE(out.summary["results"]["max_residual_normalized"].get<double>() <= 1e-12);
    REQUIRE(fs::exists(dir / "summary.json"));
}

TEST_CASE("identity-check covers all supported geometries") {
    for (const std::string kind : {"sphere2", "flat-torus2", "poincare-disk"}) {
        const fs::path dir = fresh_dir("identity_" + kind);
        RunConfig cfg = parse_config("command = identity-check\n[geometry]\nkind = " + kind +
                                     "\n[study]\nsamples = 500\n");
        cfg.out_dir = dir.string();
        REQUIRE(run(cfg).exit_code == 0);
    }
}

TEST_CASE("run-flow: traveling-wave assertion passes and artifacts appear") {
    const fs::path dir = fresh_dir("flow");
    RunConfig cfg = parse_config(R"(command = run-flow
[initial]
family = great-circle
[flow]
alpha = 1.0
beta = 1.0
[stepper]
m = 32
t_end = 0.01
snapshot_stride = 0
energy_stride = 50
)");
    cfg.out_dir = dir.string();
    const RunOutcome out = run(cfg);
    REQUIRE(out.exit_code == 0);
    REQUIRE(fs::exists(dir / "energies.csv"));
    REQUIRE(fs::exists(dir / "snapshots" / "snap_000000.csv"));
    bool saw_wave = false;
    for (const auto& a : out.summary["assertions"]) {
        if (a["name"] == "traveling-wave") {
            saw_wave = true;
            REQUIRE(a["pass"].get<bool>());
            REQUIRE(a["value"].get<double>() <= 1e-4);
        }
    }
    REQUIRE(saw_wave);

    // every artifact embeds the resolved config as comment header lines
    const std::string energies = slurp(dir / "energies.csv");
    REQUIRE(energies.rfind("# command = run-flow", 0) == 0);
    REQUIRE(energies.find("# stepper.m = 32") != std::string::npos);
    REQUIRE(energies.find("t,E1,E2,E3,E4") != std::string::npos);
}

TEST_CASE("runs are byte-deterministic") {
    const std::string text = R"(command = run-flow
[initial]
family = perturbed-latitude
r = 0.8
amp = 0.05
mode = 3
[flow]
alpha = 1.0
beta = 1.0
[stepper]
m = 32
t_end = 0.005
snapshot_stride = 100
energy_stride = 20
)";
    const fs::path dir_a = fresh_dir("det_a");
    const fs::path dir_b = fresh_dir("det_b");
    RunConfig ca = parse_config(text);
    ca.out_dir = dir_a.string();
    RunConfig cb = parse_config(text);
    cb.out_dir = dir_b.string();
    REQUIRE(run(ca).exit_code == 0);
    REQUIRE(run(cb).exit_code == 0);
    // identical bytes modulo the differing output.dir config line
    const auto normalize = [](std::string s, const std::string& dir) {
        std::string needle = "# output.dir = " + dir + "\n";
        const auto pos = s.find(needle);
        if (pos != std::string::npos) s.erase(pos, needle.size());
        return s;
    };
    REQUIRE(normalize(slurp(dir_a / "energies.csv"), dir_a.string()) ==
            normalize(slurp(dir_b / "energies.csv"), dir_b.string()));
    REQUIRE(normalize(slurp(dir_a / "snapshots" / "snap_000000.csv"), dir_a.string()) ==
            normalize(slurp(dir_b / "snapshots" / "snap_000000.csv"), dir_b.string()));
}

TEST_CASE("run-scalar: mass assertion and snapshots") {
    const fs::path dir = fresh_dir("scalar");
    RunConfig cfg = parse_config(R"(command = run-scalar
[initial]
family = gauss-packet
amp = 0.8
width = 0.6
k0 = 1
[scalar]
alpha = 1.0
beta = 1.0
K = 1.0
[stepper]
m = 64
t_end = 0.1
snapshot_stride = 100
)");
    cfg.out_dir = dir.string();
    const RunOutcome out = run(cfg);
    REQUIRE(out.exit_code == 0);
    REQUIRE(fs::exists(dir / "mass.csv"));
    REQUIRE(fs::exists(dir / "psi" / "psi_000000.csv"));
    REQUIRE(out.summary["results"]["mass_drift"].get<double>() <= 1e-8);
}

TEST_CASE("run-filament: arclength assertion") {
    const fs::path dir = fresh_dir("filament");
    RunConfig cfg = parse_config(R"(command = run-filament
[initial]
family = circle
[flow]
alpha = 1.0
beta = 1.0
[stepper]
m = 32
t_end = 0.01
)");
    cfg.out_dir = dir.string();
    const RunOutcome out = run(cfg);
    REQUIRE(out.exit_code == 0);
    REQUIRE(fs::exists(dir / "filament" / "filament_000000.csv"));
    REQUIRE(fs::exists(dir / "psi_classic.csv"));
    REQUIRE(fs::exists(dir / "filament_meta.json"));
    REQUIRE(out.summary["results"]["max_arclength_drift"].get<double>() <= 1e-4);
}

TEST_CASE("hasimoto-compare: moduli agree at desk scale") {
    const fs::path dir = fresh_dir("hasimoto");
    RunConfig cfg = parse_config(R"(command = hasimoto-compare
[initial]
family = bump
amp = 0.1
width = 0.5
[flow]
alpha = 1.0
beta = 1.0
[stepper]
m = 64
t_end = 0.02
)");
    cfg.out_dir = dir.string();
    const RunOutcome out = run(cfg);
    REQUIRE(out.exit_code == 0);
    REQUIRE(out.summary["results"]["sup_mismatch"].get<double>() <= 5e-3);
    REQUIRE(fs::exists(dir / "hasimoto_meta.json"));
    REQUIRE(fs::exists(dir / "hasimoto" / "q_000000.csv"));
    REQUIRE(fs::exists(dir / "hasimoto" / "psi_000000.csv"));
}

TEST_CASE("epsilon-study: distances decrease with epsilon") {
    const fs::path dir = fresh_dir("eps");
    RunConfig cfg = parse_config(R"(command = epsilon-study
[initial]
family = perturbed-latitude
r = 0.8
amp = 0.1
mode = 3
[flow]
alpha = 1.0
beta = 1.0
[stepper]
m = 32
t_end = 0.02
energy_stride = 10
[study]
epsilons = 1e-2, 1e-3
)");
    cfg.out_dir = dir.string();
    const RunOutcome out = run(cfg);
    REQUIRE(out.exit_code == 0);
    REQUIRE(fs::exists(dir / "eps_base" / "energies.csv"));
    REQUIRE(fs::exists(dir / "eps_run_0" / "energies.csv"));
    const auto& runs = out.summary["results"]["runs"];
    REQUIRE(runs.size() == 2);
    REQUIRE(runs[0]["distance_to_base"].get<double>() > runs[1]["distance_to_base"].get<double>());
}

TEST_CASE("convergence: RK4 order ratios sit in the factor-two band") {
    const fs::path dir = fresh_dir("conv");
    RunConfig cfg = parse_config(R"(command = convergence
[initial]
family = perturbed-latitude
r = 0.8
amp = 0.2
mode = 8
[flow]
alpha = 1.0
beta = 1.0
[stepper]
m = 64
t_end = 0.002
)");
    cfg.out_dir = dir.string();
    const RunOutcome out = run(cfg);
    REQUIRE(out.exit_code == 0);
    const auto& levels = out.summary["results"]["levels"];
    REQUIRE(levels.size() == 3);
    for (std::size_t i = 1; i < levels.size(); ++i) {
        const double ratio = levels[i]["ratio"].get<double>();
        REQUIRE(ratio >= 8.0);
        REQUIRE(ratio <= 32.0);
    }
}

TEST_CASE("degenerate flow parameters warn but do not fail") {
    const fs::path dir = fresh_dir("degenerate");
    RunConfig cfg = parse_config(R"(command = run-flow
[initial]
family = great-circle
[flow]
alpha = 0.0
beta = 0.0
[stepper]
m = 32
t_end = 0.001
)");
    cfg.out_dir = dir.string();
    const RunOutcome out = run(cfg);
    REQUIRE(out.exit_code == 0);
    REQUIRE(!out.warnings.empty());
}

TEST_CASE("missing command is a config error") {
    RunConfig cfg;
    cfg.command.clear();
    REQUIRE_THROWS_AS(run(cfg), ConfigError);
}

TEST_CASE("geometry without flow support is rejected for runs") {
    RunConfig cfg = parse_config(R"(command = run-flow
[geometry]
kind = holomorphic-space-form
n = 1
c = 4.0
[stepper]
m = 32
t_end = 0.001
)");
    cfg.out_dir = fresh_dir("hsf_flow").string();
    REQUIRE_THROWS_AS(run(cfg), ConfigError);
}
