#include "su11/analytic.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace su11::analytic {

namespace {

constexpr double kRegimeCeiling = 0.1;
constexpr double kNegativeClamp = -1e-15;

struct ObservableTerms {
    double transmission_weight; // T_A, T_B or T_A*T_B
    double efficiency;          // eta_A, eta_B or eta_A*eta_B
};

ObservableTerms terms_for(const InterferometerConfig& c, Observable obs) {
    switch (obs) {
    case Observable::singles_a: return {c.t_a, c.eta_a};
    case Observable::singles_b: return {c.t_b, c.eta_b};
    case Observable::coincidences: return {c.t_a * c.t_b, c.eta_a * c.eta_b};
    }
    return {0.0, 0.0};
}

double raw_probability(const InterferometerConfig& c, Observable obs, double phi) {
    const auto [w, eta] = terms_for(c, obs);
    const double coherent = 2.0 * std::sqrt(c.t_a * c.t_b) * c.g1 * c.g2 * std::cos(phi);
    return eta * (w * c.g1 * c.g1 + c.g2 * c.g2 + coherent);
}

double guarded(double p, const char* name) {
    if (p < kNegativeClamp || p > kRegimeCeiling) {
        throw ModelOutOfRegimeError(std::string(name) + " = " + std::to_string(p) +
                                    " outside [0, 0.1]");
    }
    return p < 0.0 ? 0.0 : p;
}

// FI(phi) = 4 * eta * T_A T_B g1^2 g2^2 sin^2(phi) / (w g1^2 + g2^2 + 2 sqrt(T_A T_B) g1 g2 cos(phi))
double fisher_value(const InterferometerConfig& c, Observable obs, double phi, bool* defined) {
    const auto [w, eta] = terms_for(c, obs);
    const double e = std::sqrt(c.t_a * c.t_b) * c.g1 * c.g2;
    const double denom = w * c.g1 * c.g1 + c.g2 * c.g2 + 2.0 * e * std::cos(phi);
    const double s = std::sin(phi);
    const double numer = 4.0 * eta * e * e * s * s;
    if (denom <= 0.0) {
        if (defined) *defined = false;
        return 0.0;
    }
    if (defined) *defined = true;
    return numer / denom;
}

} // namespace

ClickProbabilities click_probabilities_raw(const ValidatedConfig& cfg) {
    const auto& c = cfg.get();
    return {raw_probability(c, Observable::singles_a, c.phi),
            raw_probability(c, Observable::singles_b, c.phi),
            raw_probability(c, Observable::coincidences, c.phi), EngineTag::analytic};
}

ClickProbabilities click_probabilities(const ValidatedConfig& cfg) {
    if (cfg->theta != 0.0) {
        throw OutOfRangeError("theta", "the closed-form model requires theta = 0");
    }
    ClickProbabilities p = click_probabilities_raw(cfg);
    p.p_a = guarded(p.p_a, "p_A");
    p.p_b = guarded(p.p_b, "p_B");
    p.p_cc = guarded(p.p_cc, "p_CC");
    return p;
}

VisibilityTriple visibilities(const ValidatedConfig& cfg) {
    const auto& c = cfg.get();
    const double coh = 2.0 * std::sqrt(c.t_a * c.t_b) * c.g1 * c.g2;
    VisibilityTriple v;
    auto one = [&](Observable obs, double& value, bool& defined) {
        const double denom = terms_for(c, obs).transmission_weight * c.g1 * c.g1 + c.g2 * c.g2;
        if (coh <= 0.0 || denom <= 0.0) {
            value = 0.0;
            defined = false;
        } else {
            value = coh / denom;
            defined = true;
        }
    };
    one(Observable::singles_a, v.v_a, v.defined_a);
    one(Observable::singles_b, v.v_b, v.defined_b);
    one(Observable::coincidences, v.v_cc, v.defined_cc);
    return v;
}

FisherReport fisher_at_phase(const ValidatedConfig& cfg, Observable obs) {
    // partial report: only fi_at_phi is populated (fisher_max fills the rest)
    FisherReport r;
    r.observable = obs;
    r.fi_at_phi = fisher_value(cfg.get(), obs, cfg->phi, &r.defined);
    return r;
}

double fisher_max_value(const ValidatedConfig& cfg, Observable obs) {
    const auto& c = cfg.get();
    const auto [w, eta] = terms_for(c, obs);
    const double x = w * c.g1 * c.g1 + c.g2 * c.g2;
    const double y = 4.0 * c.t_a * c.t_b * c.g1 * c.g1 * c.g2 * c.g2;
    if (y <= 0.0 || x <= 0.0) return 0.0;
    const double root = std::sqrt(std::max(x * x - y, 0.0));
    return 2.0 * eta * y / (x + root);
}

FisherReport fisher_max(const ValidatedConfig& cfg, Observable obs) {
    const auto& c = cfg.get();
    FisherReport r;
    r.observable = obs;
    r.fi_at_phi = fisher_value(c, obs, c.phi, nullptr);

    const auto [w, eta] = terms_for(c, obs);
    const double x = w * c.g1 * c.g1 + c.g2 * c.g2;
    const double y = 4.0 * c.t_a * c.t_b * c.g1 * c.g1 * c.g2 * c.g2;
    if (y <= 0.0 || x <= 0.0) {
        // no interference term: FI vanishes identically
        r.fi_max = 0.0;
        r.phi_star = 0.0;
        r.defined = false;
        return r;
    }
    const double root = std::sqrt(std::max(x * x - y, 0.0));
    // 2*eta*(x - root) in cancellation-free form
    r.fi_max = 2.0 * eta * y / (x + root);

    // locate the argmax numerically on [0, pi]; FI(phi) = FI(2pi - phi)
    bool dummy = true;
    auto f = [&](double phi) { return fisher_value(c, obs, phi, &dummy); };
    constexpr int grid = 1024;
    double best_phi = 0.0;
    double best = -1.0;
    for (int i = 0; i <= grid; ++i) {
        const double phi = std::numbers::pi * i / grid;
        const double v = f(phi);
        if (v > best) {
            best = v;
            best_phi = phi;
        }
    }
    double lo = std::max(0.0, best_phi - std::numbers::pi / grid);
    double hi = std::min(std::numbers::pi, best_phi + std::numbers::pi / grid);
    constexpr double inv_golden = 0.61803398874989484820;
    double c1 = hi - inv_golden * (hi - lo);
    double c2 = lo + inv_golden * (hi - lo);
    double f1 = f(c1);
    double f2 = f(c2);
    while (hi - lo > 1e-10) {
        if (f1 < f2) {
            lo = c1;
            c1 = c2;
            f1 = f2;
            c2 = lo + inv_golden * (hi - lo);
            f2 = f(c2);
        } else {
            hi = c2;
            c2 = c1;
            f2 = f1;
            c1 = hi - inv_golden * (hi - lo);
            f1 = f(c1);
        }
    }
    r.phi_star = 0.5 * (lo + hi);
    r.defined = true;
    return r;
}

double loss_balanced_g2(double g1, double t_a, double t_b) {
    return g1 * std::sqrt(t_a * t_b);
}

} // namespace su11::analytic
