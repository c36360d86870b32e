#include "su11/errors.hpp"
#include "su11/io.hpp"
#include "su11/kernels.hpp"
#include "su11/validation.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

namespace {

// exit codes: 0 ok, 1 property failure, 2 config/model error, 3 fit failure
constexpr int kExitOk = 0;
constexpr int kExitPropertyFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitFitFailure = 3;

struct CommonOpts {
    std::string config_path;
    std::string out_path;
    std::string engines;
    int cutoff = 0;
    std::string format;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_engines = true) {
    cmd->add_option("--config", opts.config_path, "path to the JSON config file")
        ->required();
    cmd->add_option("--out", opts.out_path, "output file (stdout when omitted)");
    if (with_engines) {
        cmd->add_option("--engines", opts.engines,
                        "comma-separated engine list: analytic,bogoliubov,fock");
        cmd->add_option("--cutoff", opts.cutoff, "Fock-space cutoff per mode");
    }
}

su11::io::RunSpec load_spec(const CommonOpts& opts) {
    su11::io::RunSpec spec = su11::io::load_run_spec(opts.config_path);
    if (!opts.engines.empty()) spec.engines = su11::io::parse_engine_list(opts.engines);
    if (opts.cutoff > 0) {
        if (opts.cutoff < 2) throw su11::Error("--cutoff must be >= 2");
        spec.cutoff = opts.cutoff;
    }
    return spec;
}

void emit(const CommonOpts& opts, const std::string& content) {
    if (opts.out_path.empty()) {
        std::cout << content;
    } else {
        su11::io::write_file_atomic(opts.out_path, content);
    }
}

void require_json_format(const CommonOpts& opts) {
    if (!opts.format.empty() && opts.format != "json") {
        throw su11::Error("this command only supports --format json");
    }
}

int run_validate(const std::string& level_name) {
    const su11::validation::Level level = level_name == "full"
                                              ? su11::validation::Level::full
                                              : su11::validation::Level::fast;
    std::cout << "kernel backend: "
              << su11::kernels::backend_name(su11::kernels::active_backend()) << "\n";
    bool all_ok = true;
    for (const su11::validation::CheckResult& r : su11::validation::run_all(level)) {
        std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << r.name;
        if (!r.detail.empty()) std::cout << ": " << r.detail;
        std::cout << "\n";
        all_ok = all_ok && r.passed;
    }
    std::cout << (all_ok ? "all properties hold" : "property failure") << "\n";
    return all_ok ? kExitOk : kExitPropertyFailure;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"lossy SU(1,1) interferometer toolkit"};
    app.require_subcommand(1);

    CommonOpts probe_opts, sweep_opts, compare_opts, calibrate_opts;
    std::string validate_level = "fast";

    CLI::App* probe = app.add_subcommand("probe", "single-point report from every engine");
    add_common(probe, probe_opts);
    probe->add_option("--format", probe_opts.format, "output format (json)");

    CLI::App* sweep = app.add_subcommand("sweep", "g2 sweep (CSV by default)");
    add_common(sweep, sweep_opts);
    sweep->add_option("--format", sweep_opts.format, "output format: csv or json");

    CLI::App* compare = app.add_subcommand("compare", "SU(1,1) vs SU(2) advantage verdicts");
    add_common(compare, compare_opts, false);
    compare->add_option("--format", compare_opts.format, "output format (json)");

    CLI::App* calibrate = app.add_subcommand("calibrate", "estimate losses from measured data");
    add_common(calibrate, calibrate_opts, false);
    calibrate->add_option("--format", calibrate_opts.format, "output format (json)");

    CLI::App* validate_cmd = app.add_subcommand("validate", "run the cross-engine property suite");
    validate_cmd->add_option("--level", validate_level, "fast or full")
        ->check(CLI::IsMember({"fast", "full"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfigError;
    }

    try {
        if (probe->parsed()) {
            require_json_format(probe_opts);
            const su11::io::RunSpec spec = load_spec(probe_opts);
            emit(probe_opts, su11::io::probe_report(spec).dump(2) + "\n");
            return kExitOk;
        }
        if (sweep->parsed()) {
            const su11::io::RunSpec spec = load_spec(sweep_opts);
            const std::vector<su11::io::SweepRow> rows = su11::io::run_sweep(spec);
            if (sweep_opts.format == "json") {
                emit(sweep_opts, su11::io::sweep_json(rows, spec.engines).dump(2) + "\n");
            } else if (sweep_opts.format.empty() || sweep_opts.format == "csv") {
                emit(sweep_opts, su11::io::sweep_csv(rows, spec.engines));
            } else {
                throw su11::Error("--format must be csv or json");
            }
            return kExitOk;
        }
        if (compare->parsed()) {
            require_json_format(compare_opts);
            const su11::io::RunSpec spec = su11::io::load_run_spec(compare_opts.config_path);
            emit(compare_opts, su11::io::compare_report(spec).dump(2) + "\n");
            return kExitOk;
        }
        if (calibrate->parsed()) {
            require_json_format(calibrate_opts);
            emit(calibrate_opts,
                 su11::io::calibrate_report(calibrate_opts.config_path).dump(2) + "\n");
            return kExitOk;
        }
        if (validate_cmd->parsed()) {
            return run_validate(validate_level);
        }
    } catch (const su11::FitDivergedError& e) {
        std::cerr << "error: " << e.what() << " (residual " << e.residual() << ")\n";
        return kExitFitFailure;
    } catch (const su11::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    }
    return kExitOk;
}
