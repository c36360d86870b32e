#include "su11/io.hpp"

#include "su11/analytic.hpp"
#include "su11/bogoliubov.hpp"
#include "su11/calibration.hpp"
#include "su11/fock.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace su11::io {

namespace {

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open config file: " + path);
    }
    try {
        return json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error("malformed JSON in " + path + ": " + e.what());
    }
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
    for (const auto& item : obj.items()) {
        if (!allowed.count(item.key())) {
            throw Error("unknown key \"" + item.key() + "\" in " + where);
        }
    }
}

double require_number(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key)) {
        throw Error("missing key \"" + key + "\" in " + where);
    }
    if (!obj[key].is_number()) {
        throw Error("key \"" + key + "\" in " + where + " must be a number");
    }
    return obj[key].get<double>();
}

double number_or(const json& obj, const std::string& key, double fallback,
                 const std::string& where) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number()) {
        throw Error("key \"" + key + "\" in " + where + " must be a number");
    }
    return obj[key].get<double>();
}

InterferometerConfig parse_config_block(const json& obj) {
    reject_unknown_keys(obj, {"g1", "g2", "T_A", "T_B", "eta_A", "eta_B", "phi", "theta"},
                        "\"config\"");
    InterferometerConfig c;
    c.g1 = require_number(obj, "g1", "\"config\"");
    c.g2 = require_number(obj, "g2", "\"config\"");
    c.t_a = number_or(obj, "T_A", 1.0, "\"config\"");
    c.t_b = number_or(obj, "T_B", 1.0, "\"config\"");
    c.eta_a = number_or(obj, "eta_A", 1.0, "\"config\"");
    c.eta_b = number_or(obj, "eta_B", 1.0, "\"config\"");
    c.phi = number_or(obj, "phi", 0.0, "\"config\"");
    c.theta = number_or(obj, "theta", 0.0, "\"config\"");
    return c;
}

comparison::Su2Config parse_su2_block(const json& obj) {
    reject_unknown_keys(obj, {"alpha_sq", "R", "T_A", "T_B", "eta_A", "eta_B", "phi"},
                        "\"su2\"");
    comparison::Su2Config s;
    s.alpha_sq = require_number(obj, "alpha_sq", "\"su2\"");
    s.r = number_or(obj, "R", 0.5, "\"su2\"");
    s.t_a = number_or(obj, "T_A", 1.0, "\"su2\"");
    s.t_b = number_or(obj, "T_B", 1.0, "\"su2\"");
    s.eta_a = number_or(obj, "eta_A", 1.0, "\"su2\"");
    s.eta_b = number_or(obj, "eta_B", 1.0, "\"su2\"");
    s.phi = number_or(obj, "phi", 0.0, "\"su2\"");
    return s;
}

SweepSpec parse_sweep_block(const json& obj) {
    reject_unknown_keys(obj, {"g2_min", "g2_max", "points", "scale"}, "\"sweep\"");
    SweepSpec s;
    s.g2_min = number_or(obj, "g2_min", s.g2_min, "\"sweep\"");
    s.g2_max = number_or(obj, "g2_max", s.g2_max, "\"sweep\"");
    if (obj.contains("points")) {
        if (!obj["points"].is_number_integer()) {
            throw Error("\"sweep.points\" must be an integer");
        }
        s.points = obj["points"].get<int>();
    }
    if (obj.contains("scale")) {
        const std::string scale = obj["scale"].get<std::string>();
        if (scale == "log") s.log_scale = true;
        else if (scale == "linear") s.log_scale = false;
        else throw Error("\"sweep.scale\" must be \"log\" or \"linear\"");
    }
    if (s.points < 2) throw Error("\"sweep.points\" must be >= 2");
    if (!(s.g2_max > s.g2_min)) throw Error("\"sweep\" needs g2_max > g2_min");
    if (s.log_scale && !(s.g2_min > 0.0)) throw Error("log sweeps need g2_min > 0");
    if (s.g2_min < 0.0) throw Error("\"sweep\" gains must be >= 0");
    return s;
}

std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17e", v);
    return buf;
}

json fisher_to_json(const FisherReport& r) {
    return json{{"fi_at_phi", r.fi_at_phi},
                {"fi_max", r.fi_max},
                {"phi_star", r.phi_star},
                {"defined", r.defined}};
}

json clicks_to_json(const ClickProbabilities& p) {
    return json{{"p_A", p.p_a}, {"p_B", p.p_b}, {"p_CC", p.p_cc},
                {"engine", std::string(to_string(p.engine))}};
}

} // namespace

RunSpec load_run_spec(const std::string& path) {
    const json root = load_json_file(path);
    if (!root.is_object()) throw Error("config file must hold a JSON object");
    reject_unknown_keys(root,
                        {"config", "su2", "sweep", "engines", "cutoff", "phi_step",
                         "su2_eta_max"},
                        "the config file");
    if (!root.contains("config")) throw Error("missing \"config\" block");
    RunSpec spec;
    spec.config = parse_config_block(root["config"]);
    if (root.contains("su2")) spec.su2 = parse_su2_block(root["su2"]);
    if (root.contains("sweep")) spec.sweep = parse_sweep_block(root["sweep"]);
    if (root.contains("engines")) {
        if (!root["engines"].is_array()) throw Error("\"engines\" must be an array");
        std::string joined;
        for (const auto& e : root["engines"]) {
            if (!joined.empty()) joined += ",";
            joined += e.get<std::string>();
        }
        spec.engines = parse_engine_list(joined);
    }
    if (root.contains("cutoff")) {
        if (!root["cutoff"].is_number_integer()) throw Error("\"cutoff\" must be an integer");
        spec.cutoff = root["cutoff"].get<int>();
        if (spec.cutoff < 2) throw Error("\"cutoff\" must be >= 2");
    }
    spec.phi_step = number_or(root, "phi_step", spec.phi_step, "the config file");
    if (root.contains("su2_eta_max")) {
        spec.su2_eta_max = require_number(root, "su2_eta_max", "the config file");
    }
    return spec;
}

EngineSelection parse_engine_list(const std::string& list) {
    EngineSelection sel{false, false, false};
    std::stringstream ss(list);
    std::string item;
    bool any = false;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        any = true;
        if (item == "analytic") sel.analytic = true;
        else if (item == "bogoliubov") sel.bogoliubov = true;
        else if (item == "fock") sel.fock = true;
        else throw Error("unknown engine \"" + item + "\" (expected analytic, bogoliubov, fock)");
    }
    if (!any) throw Error("engine list is empty");
    return sel;
}

std::vector<double> sweep_grid(const SweepSpec& spec) {
    std::vector<double> grid(spec.points);
    for (int i = 0; i < spec.points; ++i) {
        const double t = static_cast<double>(i) / (spec.points - 1);
        grid[i] = spec.log_scale
                      ? spec.g2_min * std::pow(spec.g2_max / spec.g2_min, t)
                      : spec.g2_min + (spec.g2_max - spec.g2_min) * t;
    }
    grid.back() = spec.g2_max;
    return grid;
}

std::vector<SweepRow> run_sweep(const RunSpec& spec) {
    validate(spec.config); // field-named error before any work
    const std::vector<double> grid = sweep_grid(spec.sweep);
    const double balanced_g2 =
        analytic::loss_balanced_g2(spec.config.g1, spec.config.t_a, spec.config.t_b);
    std::size_t nearest = 0;
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (std::abs(grid[i] - balanced_g2) < std::abs(grid[nearest] - balanced_g2)) {
            nearest = i;
        }
    }
    // flag the nearest point only when the balanced gain actually falls
    // within half a local grid step (it may lie outside the sweep range)
    const double local_step =
        balanced_g2 >= grid[nearest]
            ? (nearest + 1 < grid.size() ? grid[nearest + 1] - grid[nearest]
                                         : grid[nearest] - grid[nearest - 1])
            : (nearest > 0 ? grid[nearest] - grid[nearest - 1]
                           : grid[nearest + 1] - grid[nearest]);
    const bool balanced_in_range =
        std::abs(grid[nearest] - balanced_g2) <= 0.5 * local_step * (1.0 + 1e-12);

    std::vector<SweepRow> rows;
    rows.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        InterferometerConfig c = spec.config;
        c.g2 = grid[i];
        const ValidatedConfig vc = validate(c);
        SweepRow row;
        row.g2 = grid[i];
        row.loss_balanced = balanced_in_range && i == nearest;
        if (spec.engines.analytic) {
            const ClickProbabilities p = analytic::click_probabilities_raw(vc);
            row.p_a = p.p_a;
            row.p_b = p.p_b;
            row.p_cc = p.p_cc;
            const VisibilityTriple v = analytic::visibilities(vc);
            row.v_a = v.v_a;
            row.v_b = v.v_b;
            row.v_cc = v.v_cc;
            row.fi_a_max = analytic::fisher_max_value(vc, Observable::singles_a);
            row.fi_b_max = analytic::fisher_max_value(vc, Observable::singles_b);
            row.fi_cc_max = analytic::fisher_max_value(vc, Observable::coincidences);
        }
        if (spec.engines.bogoliubov) {
            const ClickProbabilities p = bogoliubov::lowgain_click_probabilities(vc);
            row.bogoliubov_p = {p.p_a, p.p_b, p.p_cc};
        }
        if (spec.engines.fock) {
            const auto fi = fock::fisher_numeric_all(vc, spec.cutoff, spec.phi_step);
            row.fock_fi = {fi[0].fi_max, fi[1].fi_max, fi[2].fi_max};
        }
        rows.push_back(row);
    }
    return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows, const EngineSelection& engines) {
    std::ostringstream out;
    out << "g2";
    if (engines.analytic) {
        out << ",p_A,p_B,p_CC,V_A,V_B,V_CC,FI_A_max,FI_B_max,FI_CC_max";
    }
    if (engines.bogoliubov) out << ",p_A_bog,p_B_bog,p_CC_bog";
    if (engines.fock) out << ",FI_A_num,FI_B_num,FI_CC_num";
    out << ",loss_balanced\n";
    for (const SweepRow& r : rows) {
        out << format_full(r.g2);
        if (engines.analytic) {
            for (double v : {r.p_a, r.p_b, r.p_cc, r.v_a, r.v_b, r.v_cc, r.fi_a_max,
                             r.fi_b_max, r.fi_cc_max}) {
                out << ',' << format_full(v);
            }
        }
        if (engines.bogoliubov) {
            for (double v : *r.bogoliubov_p) out << ',' << format_full(v);
        }
        if (engines.fock) {
            for (double v : *r.fock_fi) out << ',' << format_full(v);
        }
        out << ',' << (r.loss_balanced ? 1 : 0) << '\n';
    }
    return out.str();
}

json sweep_json(const std::vector<SweepRow>& rows, const EngineSelection& engines) {
    json arr = json::array();
    for (const SweepRow& r : rows) {
        json row{{"g2", r.g2}};
        if (engines.analytic) {
            row["p_A"] = r.p_a;
            row["p_B"] = r.p_b;
            row["p_CC"] = r.p_cc;
            row["V_A"] = r.v_a;
            row["V_B"] = r.v_b;
            row["V_CC"] = r.v_cc;
            row["FI_A_max"] = r.fi_a_max;
            row["FI_B_max"] = r.fi_b_max;
            row["FI_CC_max"] = r.fi_cc_max;
        }
        if (engines.bogoliubov) {
            row["p_A_bog"] = (*r.bogoliubov_p)[0];
            row["p_B_bog"] = (*r.bogoliubov_p)[1];
            row["p_CC_bog"] = (*r.bogoliubov_p)[2];
        }
        if (engines.fock) {
            row["FI_A_num"] = (*r.fock_fi)[0];
            row["FI_B_num"] = (*r.fock_fi)[1];
            row["FI_CC_num"] = (*r.fock_fi)[2];
        }
        row["loss_balanced"] = r.loss_balanced;
        arr.push_back(std::move(row));
    }
    return arr;
}

json probe_report(const RunSpec& spec) {
    const ValidatedConfig vc = validate(spec.config);
    const auto& c = vc.get();
    json report;
    report["config"] = {{"g1", c.g1},       {"g2", c.g2},       {"T_A", c.t_a},
                        {"T_B", c.t_b},     {"eta_A", c.eta_a}, {"eta_B", c.eta_b},
                        {"phi", c.phi},     {"theta", c.theta}};
    report["loss_balanced_g2"] = analytic::loss_balanced_g2(c.g1, c.t_a, c.t_b);
    json engines;

    std::optional<ClickProbabilities> p_analytic, p_fock;
    std::optional<double> fi_cc_analytic, fi_cc_fock;
    if (spec.engines.analytic) {
        const ClickProbabilities p = analytic::click_probabilities(vc);
        p_analytic = p;
        json e{{"click_probabilities", clicks_to_json(p)}};
        const VisibilityTriple v = analytic::visibilities(vc);
        e["visibilities"] = {{"V_A", v.v_a},
                             {"V_B", v.v_b},
                             {"V_CC", v.v_cc},
                             {"defined", json{{"V_A", v.defined_a},
                                              {"V_B", v.defined_b},
                                              {"V_CC", v.defined_cc}}}};
        json fisher;
        for (Observable obs : {Observable::singles_a, Observable::singles_b,
                               Observable::coincidences}) {
            fisher[std::string(to_string(obs))] = fisher_to_json(analytic::fisher_max(vc, obs));
        }
        fi_cc_analytic = analytic::fisher_max_value(vc, Observable::coincidences);
        e["fisher"] = std::move(fisher);
        engines["analytic"] = std::move(e);
    }
    if (spec.engines.bogoliubov) {
        const MomentSet m = bogoliubov::moments(vc);
        json e{{"moments", json{{"n_a", m.n_a}, {"n_b", m.n_b}, {"n_ab", m.n_ab}}}};
        e["pseudo_unitarity_deviation"] =
            bogoliubov::pseudo_unitarity_deviation(bogoliubov::compose(vc));
        if (c.theta == 0.0) {
            e["lowgain_click_probabilities"] =
                clicks_to_json(bogoliubov::lowgain_click_probabilities(vc));
        }
        engines["bogoliubov"] = std::move(e);
    }
    if (spec.engines.fock) {
        const fock::TwoModeDensityMatrix state = fock::run_interferometer(vc, spec.cutoff);
        const ClickProbabilities p = fock::click_probabilities_numeric(state);
        p_fock = p;
        json e{{"click_probabilities", clicks_to_json(p)}};
        json fisher;
        const auto reports = fock::fisher_numeric_all(vc, spec.cutoff, spec.phi_step);
        for (const FisherReport& r : reports) {
            fisher[std::string(to_string(r.observable))] = fisher_to_json(r);
        }
        fi_cc_fock = reports[2].fi_max;
        e["fisher"] = std::move(fisher);
        e["fi_four_outcome_at_phi"] = fock::fisher_four_outcome(vc, spec.cutoff, spec.phi_step);
        e["cutoff"] = spec.cutoff;
        e["leakage"] = state.leakage;
        e["truncation_warning"] = state.truncation_warning;
        engines["fock"] = std::move(e);
    }
    report["engines"] = std::move(engines);

    if (p_analytic && p_fock) {
        json deltas;
        deltas["abs_p_A"] = std::abs(p_analytic->p_a - p_fock->p_a);
        deltas["abs_p_B"] = std::abs(p_analytic->p_b - p_fock->p_b);
        deltas["abs_p_CC"] = std::abs(p_analytic->p_cc - p_fock->p_cc);
        if (fi_cc_analytic && fi_cc_fock && *fi_cc_analytic > 0.0) {
            deltas["rel_FI_CC_max"] =
                std::abs(*fi_cc_analytic - *fi_cc_fock) / *fi_cc_analytic;
        }
        report["cross_engine"] = {{"analytic_vs_fock", std::move(deltas)}};
    }
    return report;
}

json compare_report(const RunSpec& spec) {
    const ValidatedConfig vc = validate(spec.config);
    const auto& c = vc.get();
    const double su2_eta = spec.su2_eta_max.value_or(std::max(c.eta_a, c.eta_b));

    json report;
    report["su2_eta_max"] = su2_eta;
    {
        comparison::Su2Config s = spec.su2.value_or(comparison::su2_from_su11(vc));
        const comparison::ValidatedSu2Config vs = comparison::validate_su2(s);
        const FisherReport su2 = comparison::su2_fisher_max(vs);
        report["su2"] = {{"alpha_sq", s.alpha_sq},
                         {"fi_max", su2.fi_max},
                         {"optimal_R_mode_A",
                          comparison::su2_optimal_reflectivity(s.t_a, s.t_b)},
                         {"click_probabilities",
                          clicks_to_json(comparison::su2_click_probabilities(vs))}};
    }
    json verdicts = json::array();
    for (Observable obs : {Observable::singles_a, Observable::singles_b,
                           Observable::coincidences}) {
        for (comparison::AdvantageKind kind : {comparison::AdvantageKind::conditional,
                                               comparison::AdvantageKind::unconditional}) {
            const comparison::AdvantageVerdict v =
                comparison::advantage_threshold(vc, obs, kind, su2_eta);
            json entry{{"observable", std::string(to_string(obs))},
                       {"kind", kind == comparison::AdvantageKind::conditional
                                    ? "conditional"
                                    : "unconditional"},
                       {"holds", v.holds},
                       {"condition", std::string(v.binding_condition)}};
            if (v.threshold_gain_ratio) {
                entry["threshold_gain_ratio"] = *v.threshold_gain_ratio;
            }
            verdicts.push_back(std::move(entry));
        }
    }
    report["verdicts"] = std::move(verdicts);
    report["asymptotic"] = {
        {"conditional", comparison::asymptotic_conditional_advantage(vc)},
        {"unconditional", comparison::asymptotic_unconditional_advantage(vc)}};
    {
        const comparison::RegionVerdict r = comparison::singles_vs_coincidence_region(vc);
        json region{{"singles_mode", std::string(to_string(r.singles_mode))}};
        switch (r.region) {
        case comparison::SinglesRegion::above_beta: region["region"] = "above_beta"; break;
        case comparison::SinglesRegion::outside_alpha_beta:
            region["region"] = "outside_alpha_beta";
            break;
        case comparison::SinglesRegion::always: region["region"] = "always"; break;
        case comparison::SinglesRegion::never: region["region"] = "never"; break;
        }
        if (r.alpha) region["alpha"] = *r.alpha;
        if (r.beta) region["beta"] = *r.beta;
        report["singles_vs_coincidences"] = std::move(region);
    }
    return report;
}

json calibrate_report(const std::string& path) {
    const json root = load_json_file(path);
    if (!root.is_object()) throw Error("calibration file must hold a JSON object");
    reject_unknown_keys(root, {"klyshko", "visibility_sweep", "loss_balanced_visibilities"},
                        "the calibration file");
    json results = json::array();

    if (root.contains("klyshko")) {
        const json& blk = root["klyshko"];
        reject_unknown_keys(blk, {"singles_A", "singles_B", "coincidences", "label"},
                            "\"klyshko\"");
        calib::CountRecord rec;
        rec.singles_a = require_number(blk, "singles_A", "\"klyshko\"");
        rec.singles_b = require_number(blk, "singles_B", "\"klyshko\"");
        rec.coincidences = require_number(blk, "coincidences", "\"klyshko\"");
        if (blk.contains("label")) rec.label = blk["label"].get<std::string>();
        const auto [eta_a, eta_b] = calib::klyshko_efficiencies(rec);
        results.push_back(json{{"method", "klyshko"},
                               {"eta_A", eta_a},
                               {"eta_B", eta_b},
                               {"residual", 0.0}});
    }
    if (root.contains("visibility_sweep")) {
        const json& blk = root["visibility_sweep"];
        reject_unknown_keys(blk,
                            {"g1", "eta_A", "eta_B", "samples", "residual_ceiling"},
                            "\"visibility_sweep\"");
        const double g1 = require_number(blk, "g1", "\"visibility_sweep\"");
        const double eta_a = number_or(blk, "eta_A", 1.0, "\"visibility_sweep\"");
        const double eta_b = number_or(blk, "eta_B", 1.0, "\"visibility_sweep\"");
        const double ceiling = number_or(blk, "residual_ceiling", 0.05, "\"visibility_sweep\"");
        if (!blk.contains("samples") || !blk["samples"].is_array()) {
            throw Error("\"visibility_sweep.samples\" must be an array");
        }
        std::vector<calib::VisibilitySample> samples;
        for (const json& s : blk["samples"]) {
            reject_unknown_keys(s, {"g2", "V_A", "V_B", "V_CC"}, "a visibility sample");
            calib::VisibilitySample sample;
            sample.g2 = require_number(s, "g2", "a visibility sample");
            sample.v_a = require_number(s, "V_A", "a visibility sample");
            sample.v_b = require_number(s, "V_B", "a visibility sample");
            sample.v_cc = require_number(s, "V_CC", "a visibility sample");
            samples.push_back(sample);
        }
        const calib::CalibrationResult fit =
            calib::fit_transmissions_from_visibility_sweep(g1, samples, eta_a, eta_b, ceiling);
        results.push_back(json{{"method", "visibility-fit"},
                               {"T_A", fit.t_a},
                               {"T_B", fit.t_b},
                               {"eta_A", fit.eta_a},
                               {"eta_B", fit.eta_b},
                               {"residual", fit.residual}});
    }
    if (root.contains("loss_balanced_visibilities")) {
        const json& blk = root["loss_balanced_visibilities"];
        reject_unknown_keys(blk, {"V_A", "V_B"}, "\"loss_balanced_visibilities\"");
        const double v_a = require_number(blk, "V_A", "\"loss_balanced_visibilities\"");
        const double v_b = require_number(blk, "V_B", "\"loss_balanced_visibilities\"");
        const auto [t_a, t_b] = calib::transmissions_at_loss_balance(v_a, v_b);
        results.push_back(json{{"method", "loss-balanced-inversion"},
                               {"T_A", t_a},
                               {"T_B", t_b},
                               {"residual", 0.0}});
    }
    if (results.empty()) {
        throw Error("calibration file holds no recognized data block");
    }
    return json{{"results", std::move(results)}};
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write " + tmp);
        out << content;
        if (!out) throw Error("short write to " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw Error("cannot move " + tmp + " to " + path + ": " + ec.message());
    }
}

} // namespace su11::io
