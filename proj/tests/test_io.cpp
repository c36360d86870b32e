#include "su11/io.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace su11;
namespace fs = std::filesystem;

namespace {

struct TempFile {
    fs::path path;
    explicit TempFile(const std::string& content) {
        static int counter = 0;
        path = fs::temp_directory_path() / ("su11_io_test_" + std::to_string(counter++) + ".json");
        std::ofstream out(path);
        out << content;
    }
    ~TempFile() {
        std::error_code ec;
        fs::remove(path, ec);
    }
};

const char* kMinimalSpec = R"({
  "config": {"g1": 0.05, "g2": 0.02, "T_A": 0.9, "T_B": 0.8, "phi": 0.5},
  "engines": ["analytic"],
  "sweep": {"g2_min": 0.001, "g2_max": 0.1, "points": 16, "scale": "log"}
})";

} // namespace

TEST_CASE("run spec parsing") {
    const TempFile f(kMinimalSpec);
    const io::RunSpec spec = io::load_run_spec(f.path.string());
    CHECK(spec.config.g1 == doctest::Approx(0.05));
    CHECK(spec.config.t_b == doctest::Approx(0.8));
    CHECK(spec.config.eta_a == doctest::Approx(1.0)); // default
    CHECK(spec.engines.analytic);
    CHECK_FALSE(spec.engines.fock);
    CHECK(spec.sweep.points == 16);
    CHECK(spec.cutoff == 10);
}

TEST_CASE("a config without a sweep block gets the default grid") {
    const TempFile f(R"({"config": {"g1": 0.05, "g2": 0.0}})");
    const io::RunSpec spec = io::load_run_spec(f.path.string());
    CHECK(spec.sweep.g2_min == doctest::Approx(1e-3));
    CHECK(spec.sweep.g2_max == doctest::Approx(1.0));
    CHECK(spec.sweep.points == 200);
    CHECK(spec.sweep.log_scale);
    CHECK(spec.engines.analytic);
    CHECK(spec.engines.bogoliubov);
    CHECK(spec.engines.fock);
}

TEST_CASE("unknown keys are rejected with a named message") {
    const TempFile f(R"({"config": {"g1": 0.05, "g2": 0.0, "T_a": 0.5}})");
    CHECK_THROWS_WITH_AS(io::load_run_spec(f.path.string()),
                         doctest::Contains("T_a"), Error);
}

TEST_CASE("malformed JSON and missing blocks are config errors") {
    const TempFile broken("{ not json");
    CHECK_THROWS_AS(io::load_run_spec(broken.path.string()), Error);
    const TempFile empty(R"({})");
    CHECK_THROWS_AS(io::load_run_spec(empty.path.string()), Error);
    CHECK_THROWS_AS(io::load_run_spec("/nonexistent/su11.json"), Error);
}

TEST_CASE("log sweeps demand a positive lower end") {
    const TempFile f(R"({
      "config": {"g1": 0.05, "g2": 0.0},
      "sweep": {"g2_min": 0.0, "g2_max": 1.0, "points": 8, "scale": "log"}
    })");
    CHECK_THROWS_AS(io::load_run_spec(f.path.string()), Error);
}

TEST_CASE("engine list parsing") {
    const io::EngineSelection sel = io::parse_engine_list("analytic,fock");
    CHECK(sel.analytic);
    CHECK(sel.fock);
    CHECK_FALSE(sel.bogoliubov);
    CHECK_THROWS_AS(io::parse_engine_list("qutip"), Error);
    CHECK_THROWS_AS(io::parse_engine_list(""), Error);
}

TEST_CASE("sweep grid covers both endpoints in order") {
    io::SweepSpec spec;
    spec.g2_min = 1e-3;
    spec.g2_max = 1.0;
    spec.points = 37;
    const std::vector<double> grid = io::sweep_grid(spec);
    REQUIRE(grid.size() == 37);
    CHECK(grid.front() == doctest::Approx(1e-3));
    CHECK(grid.back() == 1.0);
    for (std::size_t i = 1; i < grid.size(); ++i) CHECK(grid[i] > grid[i - 1]);
}

TEST_CASE("sweep rows: analytic columns and unique loss-balanced flag") {
    const TempFile f(kMinimalSpec);
    io::RunSpec spec = io::load_run_spec(f.path.string());
    spec.config.t_a = 0.8;
    spec.config.t_b = 0.7;
    const std::vector<io::SweepRow> rows = io::run_sweep(spec);
    REQUIRE(rows.size() == 16);
    int flagged = 0;
    const double balanced = 0.05 * std::sqrt(0.56);
    double best_dist = 1e9;
    std::size_t best_index = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].loss_balanced) ++flagged;
        if (std::abs(rows[i].g2 - balanced) < best_dist) {
            best_dist = std::abs(rows[i].g2 - balanced);
            best_index = i;
        }
        CHECK_FALSE(rows[i].fock_fi.has_value());
    }
    CHECK(flagged == 1);
    CHECK(rows[best_index].loss_balanced);
    // within half a local grid step of g1 sqrt(T_A T_B)
    const double spacing = best_index + 1 < rows.size()
                               ? rows[best_index + 1].g2 - rows[best_index].g2
                               : rows[best_index].g2 - rows[best_index - 1].g2;
    CHECK(best_dist <= spacing);
}

TEST_CASE("no row is flagged when the balanced gain lies outside the sweep") {
    const TempFile f(kMinimalSpec);
    io::RunSpec spec = io::load_run_spec(f.path.string());
    spec.config.t_a = 1.0;
    spec.config.t_b = 1.0; // balanced gain = g1 = 0.05
    spec.sweep.g2_min = 1e-3;
    spec.sweep.g2_max = 0.02; // range ends well below it
    for (const io::SweepRow& r : io::run_sweep(spec)) {
        CHECK_FALSE(r.loss_balanced);
    }
}

TEST_CASE("csv schema is stable and deterministic") {
    const TempFile f(kMinimalSpec);
    const io::RunSpec spec = io::load_run_spec(f.path.string());
    const auto rows = io::run_sweep(spec);
    const std::string csv1 = io::sweep_csv(rows, spec.engines);
    const std::string csv2 = io::sweep_csv(io::run_sweep(spec), spec.engines);
    CHECK(csv1 == csv2);
    CHECK(csv1.rfind("g2,p_A,p_B,p_CC,V_A,V_B,V_CC,FI_A_max,FI_B_max,FI_CC_max,loss_balanced\n",
                     0) == 0);

    io::EngineSelection all;
    io::RunSpec full = spec;
    full.engines = all;
    full.sweep.points = 4;
    const auto rows_all = io::run_sweep(full);
    const std::string csv_all = io::sweep_csv(rows_all, all);
    CHECK(csv_all.rfind("g2,p_A,p_B,p_CC,V_A,V_B,V_CC,FI_A_max,FI_B_max,FI_CC_max,"
                        "p_A_bog,p_B_bog,p_CC_bog,FI_A_num,FI_B_num,FI_CC_num,loss_balanced\n",
                        0) == 0);
}

TEST_CASE("probe report carries engines and cross-engine deltas") {
    const TempFile f(R"({
      "config": {"g1": 0.05, "g2": 0.03, "T_A": 0.8, "T_B": 0.7,
                  "eta_A": 0.9, "eta_B": 0.85, "phi": 1.0471975511965976}
    })");
    const io::RunSpec spec = io::load_run_spec(f.path.string());
    const io::json report = io::probe_report(spec);
    CHECK(report.contains("engines"));
    CHECK(report["engines"].contains("analytic"));
    CHECK(report["engines"].contains("bogoliubov"));
    CHECK(report["engines"].contains("fock"));
    const double p_a = report["engines"]["analytic"]["click_probabilities"]["p_A"];
    CHECK(p_a == doctest::Approx(3.62024749442896527e-03).epsilon(1e-12));
    CHECK(report["cross_engine"]["analytic_vs_fock"]["abs_p_A"].get<double>() <
          0.005 * p_a);
    // identical inputs serialize identically
    CHECK(report.dump(2) == io::probe_report(spec).dump(2));
}

TEST_CASE("compare report for the equal-transmission landmark") {
    const TempFile f(R"({
      "config": {"g1": 0.05, "g2": 0.1, "T_A": 0.6, "T_B": 0.6},
      "su2_eta_max": 1.0
    })");
    const io::json report = io::compare_report(io::load_run_spec(f.path.string()));
    CHECK(report["asymptotic"]["conditional"] == true);
    CHECK(report["asymptotic"]["unconditional"] == false); // 2*0.36 < 1
}

TEST_CASE("calibrate report dispatches on the data block") {
    SUBCASE("klyshko") {
        const TempFile f(R"({"klyshko": {"singles_A": 1000, "singles_B": 800,
                              "coincidences": 400}})");
        const io::json r = io::calibrate_report(f.path.string());
        CHECK(r["results"][0]["method"] == "klyshko");
        CHECK(r["results"][0]["eta_A"].get<double>() == doctest::Approx(0.5));
        CHECK(r["results"][0]["eta_B"].get<double>() == doctest::Approx(0.4));
    }
    SUBCASE("loss-balanced inversion") {
        const TempFile f(R"({"loss_balanced_visibilities":
                              {"V_A": 0.8235294117647058, "V_B": 0.888888888888889}})");
        const io::json r = io::calibrate_report(f.path.string());
        CHECK(r["results"][0]["T_A"].get<double>() == doctest::Approx(0.8).epsilon(1e-12));
        CHECK(r["results"][0]["T_B"].get<double>() == doctest::Approx(0.7).epsilon(1e-12));
    }
    SUBCASE("no recognized block") {
        const TempFile f(R"({})");
        CHECK_THROWS_AS(io::calibrate_report(f.path.string()), Error);
    }
}

TEST_CASE("atomic writes leave no temporary behind") {
    const fs::path target = fs::temp_directory_path() / "su11_atomic_test.csv";
    io::write_file_atomic(target.string(), "a,b\n1,2\n");
    CHECK(fs::exists(target));
    CHECK_FALSE(fs::exists(target.string() + ".tmp"));
    std::ifstream in(target);
    std::string line;
    std::getline(in, line);
    CHECK(line == "a,b");
    fs::remove(target);
}
