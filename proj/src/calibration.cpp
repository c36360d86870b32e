#include "su11/calibration.hpp"

#include "su11/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace su11::calib {

void CountRecord::check() const {
    auto bad = [](double v) { return !std::isfinite(v) || v < 0.0; };
    if (bad(singles_a)) throw OutOfRangeError("singles_A", "counts must be finite and >= 0");
    if (bad(singles_b)) throw OutOfRangeError("singles_B", "counts must be finite and >= 0");
    if (bad(coincidences)) throw OutOfRangeError("coincidences", "counts must be finite and >= 0");
    if (coincidences > std::min(singles_a, singles_b)) {
        throw OutOfRangeError("coincidences",
                              "coincidences cannot exceed either singles count");
    }
}

std::pair<double, double> klyshko_efficiencies(const CountRecord& counts) {
    counts.check();
    if (counts.singles_a <= 0.0 || counts.singles_b <= 0.0 || counts.coincidences <= 0.0) {
        throw ZeroCountsError("Klyshko ratios need nonzero singles and coincidences");
    }
    return {counts.coincidences / counts.singles_b, counts.coincidences / counts.singles_a};
}

namespace {

// model visibilities for one sample
void model_visibilities(double g1, double g2, double t_a, double t_b, double out[3]) {
    const double coh = 2.0 * std::sqrt(t_a * t_b) * g1 * g2;
    const double da = t_a * g1 * g1 + g2 * g2;
    const double db = t_b * g1 * g1 + g2 * g2;
    const double dcc = t_a * t_b * g1 * g1 + g2 * g2;
    out[0] = da > 0.0 ? coh / da : 0.0;
    out[1] = db > 0.0 ? coh / db : 0.0;
    out[2] = dcc > 0.0 ? coh / dcc : 0.0;
}

double fit_objective(double g1, const std::vector<VisibilitySample>& samples, double t_a,
                     double t_b) {
    double sum = 0.0;
    double m[3];
    for (const auto& s : samples) {
        model_visibilities(g1, s.g2, t_a, t_b, m);
        const double r0 = m[0] - s.v_a;
        const double r1 = m[1] - s.v_b;
        const double r2 = m[2] - s.v_cc;
        sum += r0 * r0 + r1 * r1 + r2 * r2;
    }
    return sum;
}

} // namespace

CalibrationResult fit_transmissions_from_visibility_sweep(
    double g1, const std::vector<VisibilitySample>& samples, double eta_a, double eta_b,
    double residual_ceiling) {
    if (samples.size() < 3) {
        throw OutOfRangeError("samples", "the visibility fit needs at least 3 grid points");
    }
    if (!(g1 > 0.0) || !std::isfinite(g1)) {
        throw OutOfRangeError("g1", "the visibility fit needs g1 > 0");
    }
    double v_max = 0.0;
    for (const auto& s : samples) {
        for (double v : {s.v_a, s.v_b, s.v_cc}) {
            if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
                throw OutOfRangeError("visibility", "visibilities must be in [0, 1]");
            }
            v_max = std::max(v_max, v);
        }
    }
    if (v_max < 1e-6) {
        throw FitDivergedError("no interference signal in the visibility data", 0.0);
    }

    auto objective = [&](double ta, double tb) { return fit_objective(g1, samples, ta, tb); };

    // coarse grid seed
    constexpr int kSeedGrid = 41;
    double best_ta = 0.5, best_tb = 0.5;
    double best = objective(best_ta, best_tb);
    for (int i = 0; i <= kSeedGrid; ++i) {
        for (int j = 0; j <= kSeedGrid; ++j) {
            const double ta = static_cast<double>(i) / kSeedGrid;
            const double tb = static_cast<double>(j) / kSeedGrid;
            const double v = objective(ta, tb);
            if (v < best) {
                best = v;
                best_ta = ta;
                best_tb = tb;
            }
        }
    }
    // compass search, step halving down to 1e-13
    double step = 1.0 / kSeedGrid;
    while (step > 1e-13) {
        bool improved = false;
        const double cand[4][2] = {{best_ta + step, best_tb},
                                   {best_ta - step, best_tb},
                                   {best_ta, best_tb + step},
                                   {best_ta, best_tb - step}};
        for (const auto& c : cand) {
            const double ta = std::clamp(c[0], 0.0, 1.0);
            const double tb = std::clamp(c[1], 0.0, 1.0);
            const double v = objective(ta, tb);
            if (v < best) {
                best = v;
                best_ta = ta;
                best_tb = tb;
                improved = true;
            }
        }
        if (!improved) step *= 0.5;
    }

    CalibrationResult r;
    r.method = CalibrationMethod::visibility_fit;
    r.eta_a = eta_a;
    r.eta_b = eta_b;
    r.t_a = best_ta;
    r.t_b = best_tb;
    r.residual = std::sqrt(best / (3.0 * static_cast<double>(samples.size())));
    if (r.residual > residual_ceiling) {
        throw FitDivergedError("rms visibility residual " + std::to_string(r.residual) +
                                   " exceeds ceiling " + std::to_string(residual_ceiling),
                               r.residual);
    }
    return r;
}

std::pair<double, double> transmissions_at_loss_balance(double v_a, double v_b) {
    for (double v : {v_a, v_b}) {
        if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
            throw OutOfRangeError("visibility", "visibilities must be in [0, 1]");
        }
    }
    return {v_b / (2.0 - v_b), v_a / (2.0 - v_a)};
}

Recommendation recommend_strategy(const ValidatedConfig& cfg, std::optional<double> g2_max,
                                  int grid_points) {
    const auto& c = cfg.get();
    Recommendation rec;
    if (!g2_max) {
        // free choice of g2: drive the second stage hard and read the singles
        // on the better-detected arm
        rec.tag = RecommendationTag::asymptotic_singles;
        rec.observable =
            (c.eta_b > c.eta_a) ? Observable::singles_b : Observable::singles_a;
        rec.g2 = 10.0 * c.g1;
        InterferometerConfig at = c;
        at.g2 = rec.g2;
        rec.fi_max = analytic::fisher_max_value(validate(at), rec.observable);
        return rec;
    }
    if (!(*g2_max >= 0.0) || !std::isfinite(*g2_max)) {
        throw OutOfRangeError("g2_max", "must be finite and >= 0");
    }
    if (grid_points < 2) {
        throw OutOfRangeError("grid_points", "need at least 2 grid points");
    }
    rec.tag = RecommendationTag::constrained_grid;
    double best = -1.0;
    const Observable all[3] = {Observable::singles_a, Observable::singles_b,
                               Observable::coincidences};
    for (int i = 0; i < grid_points; ++i) {
        const double g2 = *g2_max * i / (grid_points - 1);
        InterferometerConfig at = c;
        at.g2 = g2;
        const ValidatedConfig vc = validate(at);
        for (Observable obs : all) {
            const double fi = analytic::fisher_max_value(vc, obs);
            if (fi > best) {
                best = fi;
                rec.observable = obs;
                rec.g2 = g2;
                rec.fi_max = fi;
            }
        }
    }
    return rec;
}

} // namespace su11::calib
