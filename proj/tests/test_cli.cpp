// End-to-end checks of the command-line surface.  The binary path arrives in
// the SU11_CLI environment variable (set by CTest); the docs/examples configs
// double as fixtures, so they stay working.

#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

const char* cli_path() {
    const char* p = std::getenv("SU11_CLI");
    REQUIRE_MESSAGE(p != nullptr, "SU11_CLI must point at the su11 binary");
    return p;
}

const fs::path& examples_dir() {
    static const fs::path dir = [] {
        const char* p = std::getenv("SU11_EXAMPLES");
        REQUIRE_MESSAGE(p != nullptr, "SU11_EXAMPLES must point at docs/examples");
        return fs::path(p);
    }();
    return dir;
}

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    const fs::path out = fs::temp_directory_path() / ("su11_cli_" + std::to_string(counter++) + ".out");
    const std::string cmd = std::string(cli_path()) + " " + args + " > " + out.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out);
    std::stringstream ss;
    ss << in.rdbuf();
    r.output = ss.str();
    fs::remove(out);
    return r;
}

std::string example(const char* name) { return (examples_dir() / name).string(); }

struct TempConfig {
    fs::path path;
    explicit TempConfig(const std::string& content) {
        static int counter = 0;
        path = fs::temp_directory_path() / ("su11_cli_cfg_" + std::to_string(counter++) + ".json");
        std::ofstream out(path);
        out << content;
    }
    ~TempConfig() {
        std::error_code ec;
        fs::remove(path, ec);
    }
};

} // namespace

TEST_CASE("probe on the shipped example succeeds and reports all engines") {
    const RunResult r = run_cli("probe --config " + example("probe.json"));
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"analytic\"") != std::string::npos);
    CHECK(r.output.find("\"bogoliubov\"") != std::string::npos);
    CHECK(r.output.find("\"fock\"") != std::string::npos);
    CHECK(r.output.find("cross_engine") != std::string::npos);
}

TEST_CASE("probe on a lossless balanced config reports unit coincidence visibility") {
    const TempConfig cfg(R"({"config": {"g1": 0.05, "g2": 0.05},
                             "engines": ["analytic"]})");
    const RunResult r = run_cli("probe --config " + cfg.path.string());
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"V_CC\": 1.0") != std::string::npos);
}

TEST_CASE("config errors exit with code 2 and name the field") {
    const TempConfig cfg(R"({"config": {"g1": 0.05, "g2": 0.03, "T_A": 1.2}})");
    const RunResult r = run_cli("probe --config " + cfg.path.string());
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("T_A") != std::string::npos);

    const TempConfig broken("{ nope");
    CHECK(run_cli("probe --config " + broken.path.string()).exit_code == 2);
    CHECK(run_cli("probe --config /does/not/exist.json").exit_code == 2);
}

TEST_CASE("sweep writes a deterministic CSV with ordered g2 and one balanced row") {
    const TempConfig cfg(R"({
      "config": {"g1": 0.05, "g2": 0.0, "T_A": 0.8, "T_B": 0.7},
      "sweep": {"g2_min": 1e-3, "g2_max": 0.3, "points": 40, "scale": "log"},
      "engines": ["analytic"]
    })");
    const fs::path out1 = fs::temp_directory_path() / "su11_sweep_1.csv";
    const fs::path out2 = fs::temp_directory_path() / "su11_sweep_2.csv";
    const RunResult r1 =
        run_cli("sweep --config " + cfg.path.string() + " --out " + out1.string());
    const RunResult r2 =
        run_cli("sweep --config " + cfg.path.string() + " --out " + out2.string());
    REQUIRE(r1.exit_code == 0);
    REQUIRE(r2.exit_code == 0);

    std::ifstream f1(out1), f2(out2);
    std::stringstream s1, s2;
    s1 << f1.rdbuf();
    s2 << f2.rdbuf();
    CHECK(s1.str() == s2.str());
    CHECK(s1.str().rfind("g2,p_A,p_B,p_CC,", 0) == 0);
    CHECK_FALSE(fs::exists(out1.string() + ".tmp"));

    // g2 strictly increasing, exactly one loss-balanced row
    std::istringstream lines(s1.str());
    std::string line;
    std::getline(lines, line); // header
    double prev = -1.0;
    int flagged = 0;
    while (std::getline(lines, line)) {
        const double g2 = std::stod(line.substr(0, line.find(',')));
        CHECK(g2 > prev);
        prev = g2;
        if (line.back() == '1') ++flagged;
    }
    CHECK(flagged == 1);
    fs::remove(out1);
    fs::remove(out2);
}

TEST_CASE("sweep honors --engines and emits fock columns") {
    const TempConfig cfg(R"({
      "config": {"g1": 0.05, "g2": 0.0},
      "sweep": {"g2_min": 0.01, "g2_max": 0.05, "points": 3, "scale": "linear"},
      "engines": ["analytic"]
    })");
    const RunResult r =
        run_cli("sweep --config " + cfg.path.string() + " --engines analytic,fock");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("FI_CC_num") != std::string::npos);
}

TEST_CASE("compare reports the landmark verdicts") {
    const RunResult r = run_cli("compare --config " + example("compare.json"));
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"conditional\": true") != std::string::npos);
    CHECK(r.output.find("\"unconditional\": false") != std::string::npos);
}

TEST_CASE("calibrate handles the shipped examples") {
    const RunResult kly = run_cli("calibrate --config " + example("calibrate_klyshko.json"));
    CHECK(kly.exit_code == 0);
    CHECK(kly.output.find("\"eta_A\": 0.5") != std::string::npos);

    const RunResult fit = run_cli("calibrate --config " + example("calibrate_visibility.json"));
    CHECK(fit.exit_code == 0);
    CHECK(fit.output.find("visibility-fit") != std::string::npos);

    const RunResult lb = run_cli("calibrate --config " + example("calibrate_loss_balanced.json"));
    CHECK(lb.exit_code == 0);
    CHECK(lb.output.find("loss-balanced-inversion") != std::string::npos);
}

TEST_CASE("calibrate exits 3 when the fit has nothing to fit") {
    const TempConfig cfg(R"({
      "visibility_sweep": {
        "g1": 0.05,
        "samples": [
          {"g2": 0.01, "V_A": 0, "V_B": 0, "V_CC": 0},
          {"g2": 0.02, "V_A": 0, "V_B": 0, "V_CC": 0},
          {"g2": 0.03, "V_A": 0, "V_B": 0, "V_CC": 0}
        ]
      }
    })");
    const RunResult r = run_cli("calibrate --config " + cfg.path.string());
    CHECK(r.exit_code == 3);
}

TEST_CASE("unknown subcommands and missing flags are usage errors") {
    CHECK(run_cli("frobnicate").exit_code == 2);
    CHECK(run_cli("probe").exit_code == 2);
}

TEST_CASE("probe rejects csv output") {
    const RunResult r =
        run_cli("probe --config " + example("probe.json") + " --format csv");
    CHECK(r.exit_code == 2);
}

TEST_CASE("sweep emits json rows on request") {
    const TempConfig cfg(R"({
      "config": {"g1": 0.05, "g2": 0.0},
      "sweep": {"g2_min": 0.01, "g2_max": 0.02, "points": 2, "scale": "linear"},
      "engines": ["analytic"]
    })");
    const RunResult r =
        run_cli("sweep --config " + cfg.path.string() + " --format json");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"FI_CC_max\"") != std::string::npos);
    CHECK(r.output.find("\"loss_balanced\"") != std::string::npos);
}
