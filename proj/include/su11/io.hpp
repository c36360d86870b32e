#pragma once

#include "su11/comparison.hpp"
#include "su11/config.hpp"

#include <json.hpp>

#include <array>
#include <optional>
#include <string>
#include <vector>

// File formats and command plumbing: JSON run/data configs, the g2 sweep
// runner, the stable CSV schema and atomic output writing.  All emitted text
// is deterministic for identical inputs.

namespace su11::io {

using json = nlohmann::ordered_json;

struct SweepSpec {
    double g2_min = 1e-3;
    double g2_max = 1.0;
    int points = 200;
    bool log_scale = true;
};

struct EngineSelection {
    bool analytic = true;
    bool bogoliubov = true;
    bool fock = true;
};

struct RunSpec {
    InterferometerConfig config;
    std::optional<comparison::Su2Config> su2;
    SweepSpec sweep;
    EngineSelection engines;
    int cutoff = 10;
    double phi_step = 1e-4;
    std::optional<double> su2_eta_max; // classical benchmark detector
};

/// Parses a run config file.  Unknown keys and malformed values throw
/// su11::Error with a field-named message.
RunSpec load_run_spec(const std::string& path);

/// Parses the --engines override ("analytic,fock", ...).
EngineSelection parse_engine_list(const std::string& list);

struct SweepRow {
    double g2 = 0.0;
    // analytic engine (closed forms, evaluated without the regime guard so
    // the grid can extend past the model's validity, as the figures do)
    double p_a = 0.0, p_b = 0.0, p_cc = 0.0;
    double v_a = 0.0, v_b = 0.0, v_cc = 0.0;
    double fi_a_max = 0.0, fi_b_max = 0.0, fi_cc_max = 0.0;
    std::optional<std::array<double, 3>> bogoliubov_p; // exact moments read as p
    std::optional<std::array<double, 3>> fock_fi;      // numeric FI maxima
    bool loss_balanced = false;
};

/// Runs the g2 sweep.  Rows are ordered by ascending g2; the loss-balanced
/// flag marks exactly the grid point closest to g1 sqrt(T_A T_B).
std::vector<SweepRow> run_sweep(const RunSpec& spec);

/// Grid of g2 values for a sweep spec (ascending, endpoints included).
std::vector<double> sweep_grid(const SweepSpec& spec);

std::string sweep_csv(const std::vector<SweepRow>& rows, const EngineSelection& engines);
json sweep_json(const std::vector<SweepRow>& rows, const EngineSelection& engines);

/// Single-point report from every enabled engine plus cross-engine deltas.
json probe_report(const RunSpec& spec);

/// Advantage verdicts for each observable and kind plus the asymptotic rules.
json compare_report(const RunSpec& spec);

/// Calibration data file: runs every block present among "klyshko",
/// "visibility_sweep" and "loss_balanced_visibilities".
json calibrate_report(const std::string& path);

/// Writes content to path via a temporary file and an atomic rename, so a
/// failed run never leaves a partial file behind.
void write_file_atomic(const std::string& path, const std::string& content);

} // namespace su11::io
