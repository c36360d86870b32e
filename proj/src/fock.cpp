#include "su11/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace su11::fock {

namespace {

const cdouble kI{0.0, 1.0};
constexpr double kLeakageWarnThreshold = 1e-6;
constexpr double kProbabilityFloor = 1e-15;

std::size_t idx(int na, int nb, int d) {
    return static_cast<std::size_t>(na) * d + nb;
}

// c_{n,k} = sqrt(binom(n,k)) sqrt(T)^{n-k} sqrt(1-T)^k : amplitude for losing
// k of n photons.  Row n, diagonal k.
std::vector<double> loss_amplitudes(double t, int d) {
    std::vector<double> c(static_cast<std::size_t>(d) * d, 0.0);
    const double rt = std::sqrt(t);
    const double rl = std::sqrt(1.0 - t);
    for (int n = 0; n < d; ++n) {
        for (int k = 0; k <= n; ++k) {
            double binom = 1.0;
            for (int j = 1; j <= k; ++j) binom *= static_cast<double>(n - k + j) / j;
            c[static_cast<std::size_t>(n) * d + k] =
                std::sqrt(binom) * std::pow(rt, n - k) * std::pow(rl, k);
        }
    }
    return c;
}

// rho'[(m,a),(n,b)] = sum_k c_{m+k,k} c_{n+k,k} rho[(m+k,a),(n+k,b)]  (mode A)
CMatrix apply_loss(const CMatrix& rho, Mode mode, double t, int d) {
    const std::vector<double> c = loss_amplitudes(t, d);
    CMatrix out(rho.dim());
    for (int k = 0; k < d; ++k) {
        for (int m = 0; m + k < d; ++m) {
            const double cm = c[static_cast<std::size_t>(m + k) * d + k];
            if (cm == 0.0) continue;
            for (int n = 0; n + k < d; ++n) {
                const double w = cm * c[static_cast<std::size_t>(n + k) * d + k];
                if (w == 0.0) continue;
                for (int a = 0; a < d; ++a) {
                    for (int b = 0; b < d; ++b) {
                        if (mode == Mode::a) {
                            out(idx(m, a, d), idx(n, b, d)) +=
                                w * rho(idx(m + k, a, d), idx(n + k, b, d));
                        } else {
                            out(idx(a, m, d), idx(b, n, d)) +=
                                w * rho(idx(a, m + k, d), idx(b, n + k, d));
                        }
                    }
                }
            }
        }
    }
    return out;
}

// adjoint (Heisenberg) channel: M' = sum_k K_k^dag M K_k
CMatrix apply_loss_adjoint(const CMatrix& m, Mode mode, double t, int d) {
    const std::vector<double> c = loss_amplitudes(t, d);
    CMatrix out(m.dim());
    for (int k = 0; k < d; ++k) {
        for (int p = k; p < d; ++p) {
            const double cp = c[static_cast<std::size_t>(p) * d + k];
            if (cp == 0.0) continue;
            for (int q = k; q < d; ++q) {
                const double w = cp * c[static_cast<std::size_t>(q) * d + k];
                if (w == 0.0) continue;
                for (int a = 0; a < d; ++a) {
                    for (int b = 0; b < d; ++b) {
                        if (mode == Mode::a) {
                            out(idx(p, a, d), idx(q, b, d)) +=
                                w * m(idx(p - k, a, d), idx(q - k, b, d));
                        } else {
                            out(idx(a, p, d), idx(b, q, d)) +=
                                w * m(idx(a, p - k, d), idx(b, q - k, d));
                        }
                    }
                }
            }
        }
    }
    return out;
}

double squeezer_leakage(double g, int d) {
    const double th = std::tanh(g);
    return std::pow(th, 2 * d);
}

} // namespace

SqueezerOp two_mode_squeezer(double g, double theta, int d) {
    const std::size_t n = static_cast<std::size_t>(d) * d;
    CMatrix gen(n);
    // g (e^{i theta} a+ b+ - e^{-i theta} a b) in the number basis
    const cdouble up = g * std::exp(kI * theta);
    const cdouble down = -g * std::exp(-kI * theta);
    for (int na = 0; na + 1 < d; ++na) {
        for (int nb = 0; nb + 1 < d; ++nb) {
            const double amp = std::sqrt(static_cast<double>(na + 1) * (nb + 1));
            gen(idx(na + 1, nb + 1, d), idx(na, nb, d)) += up * amp;
            gen(idx(na, nb, d), idx(na + 1, nb + 1, d)) += down * amp;
        }
    }
    SqueezerOp op{expm(gen), squeezer_leakage(g, d), false};
    op.truncation_warning = op.vacuum_leakage > kLeakageWarnThreshold;
    return op;
}

TwoModeDensityMatrix vacuum_state(int d) {
    TwoModeDensityMatrix s;
    s.cutoff = d;
    s.rho = CMatrix(static_cast<std::size_t>(d) * d);
    s.rho(0, 0) = 1.0;
    return s;
}

TwoModeDensityMatrix loss_channel(const TwoModeDensityMatrix& state, Mode mode, double t) {
    if (t < 0.0 || t > 1.0 || !std::isfinite(t)) {
        throw OutOfRangeError("T", "loss transmission must be in [0, 1]");
    }
    TwoModeDensityMatrix out = state;
    out.rho = apply_loss(state.rho, mode, t, state.cutoff);
    return out;
}

TwoModeDensityMatrix phase_shift(const TwoModeDensityMatrix& state, Mode mode, double phi) {
    const int d = state.cutoff;
    std::vector<cdouble> ph(d);
    for (int n = 0; n < d; ++n) ph[n] = std::exp(kI * (phi * n));
    TwoModeDensityMatrix out = state;
    for (int ra = 0; ra < d; ++ra)
        for (int rb = 0; rb < d; ++rb)
            for (int ca = 0; ca < d; ++ca)
                for (int cb = 0; cb < d; ++cb) {
                    const cdouble f = (mode == Mode::a) ? ph[ra] * std::conj(ph[ca])
                                                        : ph[rb] * std::conj(ph[cb]);
                    out.rho(idx(ra, rb, d), idx(ca, cb, d)) =
                        f * state.rho(idx(ra, rb, d), idx(ca, cb, d));
                }
    return out;
}

TwoModeDensityMatrix run_interferometer(const ValidatedConfig& cfg, int d) {
    const auto& c = cfg.get();
    const SqueezerOp s1 = two_mode_squeezer(c.g1, 0.0, d);
    // the second stage maps a -> C2 a + e^{-i theta} S2 b+, which is the
    // squeezer generator evaluated at -theta
    const SqueezerOp s2 = two_mode_squeezer(c.g2, -c.theta, d);

    TwoModeDensityMatrix state = vacuum_state(d);
    state.rho = s1.unitary * state.rho * s1.unitary.adjoint();
    state = phase_shift(state, Mode::a, c.phi);
    state = loss_channel(state, Mode::a, c.t_a);
    state = loss_channel(state, Mode::b, c.t_b);
    state.rho = s2.unitary * state.rho * s2.unitary.adjoint();
    state = loss_channel(state, Mode::a, c.eta_a);
    state = loss_channel(state, Mode::b, c.eta_b);

    state.leakage = s1.vacuum_leakage + s2.vacuum_leakage;
    state.truncation_warning = s1.truncation_warning || s2.truncation_warning;
    return state;
}

ClickPovm make_click_povm(int d) {
    const std::size_t n = static_cast<std::size_t>(d) * d;
    ClickPovm p{CMatrix(n), CMatrix(n), CMatrix(n), CMatrix(n)};
    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
            const std::size_t i = idx(a, b, d);
            const bool click_a = a > 0;
            const bool click_b = b > 0;
            if (!click_a && !click_b) p.no_no(i, i) = 1.0;
            if (click_a && !click_b) p.click_no(i, i) = 1.0;
            if (!click_a && click_b) p.no_click(i, i) = 1.0;
            if (click_a && click_b) p.click_click(i, i) = 1.0;
        }
    }
    return p;
}

namespace {

// diagonal sums can land a rounding error outside [0, 1]
double clamp_probability(double p) { return std::clamp(p, 0.0, 1.0); }

} // namespace

ClickProbabilities click_probabilities_numeric(const TwoModeDensityMatrix& state) {
    const int d = state.cutoff;
    double q_a = 0.0, q_b = 0.0;
    for (int b = 0; b < d; ++b) q_a += state.rho(idx(0, b, d), idx(0, b, d)).real();
    for (int a = 0; a < d; ++a) q_b += state.rho(idx(a, 0, d), idx(a, 0, d)).real();
    const double q_00 = state.rho(0, 0).real();
    return {clamp_probability(1.0 - q_a), clamp_probability(1.0 - q_b),
            clamp_probability(1.0 - q_a - q_b + q_00), EngineTag::fock};
}

MomentSet photon_moments(const TwoModeDensityMatrix& state) {
    const int d = state.cutoff;
    MomentSet m;
    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
            const double pop = state.rho(idx(a, b, d), idx(a, b, d)).real();
            m.n_a += a * pop;
            m.n_b += b * pop;
            m.n_ab += static_cast<double>(a) * b * pop;
        }
    }
    return m;
}

std::vector<double> photon_distribution(const TwoModeDensityMatrix& state, Mode mode) {
    const int d = state.cutoff;
    std::vector<double> dist(d, 0.0);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            dist[mode == Mode::a ? a : b] += state.rho(idx(a, b, d), idx(a, b, d)).real();
    return dist;
}

PhaseScanPlan::PhaseScanPlan(const ValidatedConfig& cfg, int d) : d_(d) {
    const auto& c = cfg.get();
    const SqueezerOp s2 = two_mode_squeezer(c.g2, -c.theta, d);
    leakage_ = squeezer_leakage(c.g1, d) + s2.vacuum_leakage;
    warning_ = squeezer_leakage(c.g1, d) > kLeakageWarnThreshold || s2.truncation_warning;

    // two-mode squeezed vacuum amplitudes after the first stage
    std::vector<double> lam(d);
    for (int n = 0; n < d; ++n) lam[n] = std::pow(std::tanh(c.g1), n) / std::cosh(c.g1);

    // no-click projectors pulled back through the fixed tail of the pipeline
    const std::size_t n2 = static_cast<std::size_t>(d) * d;
    std::array<CMatrix, 3> ops{CMatrix(n2), CMatrix(n2), CMatrix(n2)};
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            if (a == 0) ops[0](idx(a, b, d), idx(a, b, d)) = 1.0; // P0_A x I
            if (b == 0) ops[1](idx(a, b, d), idx(a, b, d)) = 1.0; // I x P0_B
            if (a == 0 && b == 0) ops[2](idx(a, b, d), idx(a, b, d)) = 1.0;
        }

    const CMatrix u2h = s2.unitary.adjoint();
    for (std::size_t i = 0; i < 3; ++i) {
        CMatrix m = apply_loss_adjoint(ops[i], Mode::b, c.eta_b, d);
        m = apply_loss_adjoint(m, Mode::a, c.eta_a, d);
        m = u2h * m * s2.unitary;
        m = apply_loss_adjoint(m, Mode::b, c.t_b, d);
        m = apply_loss_adjoint(m, Mode::a, c.t_a, d);
        // q(phi) = sum_{m,n} lam_m lam_n e^{i phi (m-n)} M[(n,n),(m,m)]
        coeff_[i].assign(2 * d - 1, cdouble{});
        for (int mm = 0; mm < d; ++mm)
            for (int nn = 0; nn < d; ++nn)
                coeff_[i][mm - nn + d - 1] += lam[mm] * lam[nn] * m(idx(nn, nn, d), idx(mm, mm, d));
    }
}

PhaseScanPlan::OutcomeProbabilities PhaseScanPlan::outcome_probabilities(double phi) const {
    double q[3];
    for (std::size_t i = 0; i < 3; ++i) {
        cdouble s = 0.0;
        for (int k = -(d_ - 1); k <= d_ - 1; ++k) {
            s += coeff_[i][k + d_ - 1] * std::exp(kI * (k * phi));
        }
        q[i] = s.real();
    }
    return {q[2], q[1] - q[2], q[0] - q[2], 1.0 - q[0] - q[1] + q[2]};
}

ClickProbabilities PhaseScanPlan::probabilities(double phi) const {
    const OutcomeProbabilities o = outcome_probabilities(phi);
    return {clamp_probability(o.click_no + o.click_click),
            clamp_probability(o.no_click + o.click_click),
            clamp_probability(o.click_click), EngineTag::fock};
}

namespace {

double binary_fisher(double p, double dp) {
    if (p < kProbabilityFloor || p > 1.0 - kProbabilityFloor) return 0.0;
    return dp * dp / (p * (1.0 - p));
}

struct ScanContext {
    const PhaseScanPlan& plan;
    double h;

    double prob(Observable obs, double phi) const {
        return plan.probabilities(phi).get(obs);
    }
    double derivative(Observable obs, double phi) const {
        return (prob(obs, phi + h) - prob(obs, phi - h)) / (2.0 * h);
    }
    double fisher(Observable obs, double phi) const {
        return binary_fisher(prob(obs, phi), derivative(obs, phi));
    }
};

void check_derivative_stability(const ScanContext& ctx, Observable obs, double phi) {
    const double p = ctx.prob(obs, phi);
    const double d1 = ctx.derivative(obs, phi);
    if (binary_fisher(p, d1) < 1e-9) return; // negligible information here
    const double d2 = (ctx.prob(obs, phi + 2.0 * ctx.h) - ctx.prob(obs, phi - 2.0 * ctx.h)) /
                      (4.0 * ctx.h);
    const double scale = std::max(std::abs(d1), std::abs(d2));
    if (std::abs(d1 - d2) > 1e-4 * scale) {
        throw DerivativeUnstableError("relative derivative error " +
                                      std::to_string(std::abs(d1 - d2) / scale) +
                                      " at phi = " + std::to_string(phi));
    }
}

FisherReport scan_observable(const ScanContext& ctx, Observable obs, double phi_at,
                             bool fold_symmetric) {
    constexpr int kGridPoints = 721;
    constexpr double two_pi = 2.0 * std::numbers::pi;
    FisherReport r;
    r.observable = obs;
    r.fi_at_phi = ctx.fisher(obs, phi_at);

    double best = -1.0, best_phi = 0.0;
    for (int i = 0; i < kGridPoints; ++i) {
        const double phi = two_pi * i / (kGridPoints - 1);
        const double v = ctx.fisher(obs, phi);
        if (v > best) {
            best = v;
            best_phi = phi;
        }
    }
    const double step = two_pi / (kGridPoints - 1);
    double lo = best_phi - step;
    double hi = best_phi + step;
    constexpr double inv_golden = 0.61803398874989484820;
    double c1 = hi - inv_golden * (hi - lo);
    double c2 = lo + inv_golden * (hi - lo);
    double f1 = ctx.fisher(obs, c1);
    double f2 = ctx.fisher(obs, c2);
    while (hi - lo > 1e-10) {
        if (f1 < f2) {
            lo = c1;
            c1 = c2;
            f1 = f2;
            c2 = lo + inv_golden * (hi - lo);
            f2 = ctx.fisher(obs, c2);
        } else {
            hi = c2;
            c2 = c1;
            f2 = f1;
            c1 = hi - inv_golden * (hi - lo);
            f1 = ctx.fisher(obs, c1);
        }
    }
    double phi_star = reduce_phase(0.5 * (lo + hi));
    double fi_star = ctx.fisher(obs, phi_star);
    if (fi_star < best) {
        fi_star = best;
        phi_star = reduce_phase(best_phi);
    }
    if (fold_symmetric && phi_star > std::numbers::pi) {
        phi_star = two_pi - phi_star;
    }
    r.fi_max = fi_star;
    r.phi_star = phi_star;
    r.defined = true;
    return r;
}

void check_phi_step(double phi_step) {
    if (!(phi_step > 0.0) || phi_step > 1e-2) {
        throw OutOfRangeError("phi_step", "must be in (0, 1e-2]");
    }
}

} // namespace

std::array<FisherReport, 3> fisher_numeric_all(const ValidatedConfig& cfg, int d,
                                               double phi_step) {
    check_phi_step(phi_step);
    const PhaseScanPlan plan(cfg, d);
    const ScanContext ctx{plan, phi_step};
    const bool fold = cfg->theta == 0.0;
    std::array<FisherReport, 3> out;
    const Observable all[3] = {Observable::singles_a, Observable::singles_b,
                               Observable::coincidences};
    for (int i = 0; i < 3; ++i) {
        check_derivative_stability(ctx, all[i], cfg->phi);
        out[i] = scan_observable(ctx, all[i], cfg->phi, fold);
        check_derivative_stability(ctx, all[i], out[i].phi_star);
    }
    return out;
}

FisherReport fisher_numeric(const ValidatedConfig& cfg, int d, Observable obs,
                            double phi_step) {
    check_phi_step(phi_step);
    const PhaseScanPlan plan(cfg, d);
    const ScanContext ctx{plan, phi_step};
    check_derivative_stability(ctx, obs, cfg->phi);
    FisherReport r = scan_observable(ctx, obs, cfg->phi, cfg->theta == 0.0);
    check_derivative_stability(ctx, obs, r.phi_star);
    return r;
}

double fisher_four_outcome(const ValidatedConfig& cfg, int d, double phi_step) {
    check_phi_step(phi_step);
    const PhaseScanPlan plan(cfg, d);
    const double phi = cfg->phi;
    const double h = phi_step;
    const auto p0 = plan.outcome_probabilities(phi);
    const auto pp = plan.outcome_probabilities(phi + h);
    const auto pm = plan.outcome_probabilities(phi - h);
    const double probs[4] = {p0.no_no, p0.click_no, p0.no_click, p0.click_click};
    const double dprobs[4] = {(pp.no_no - pm.no_no) / (2 * h),
                              (pp.click_no - pm.click_no) / (2 * h),
                              (pp.no_click - pm.no_click) / (2 * h),
                              (pp.click_click - pm.click_click) / (2 * h)};
    double fi = 0.0;
    for (int i = 0; i < 4; ++i) {
        if (probs[i] >= kProbabilityFloor) fi += dprobs[i] * dprobs[i] / probs[i];
    }
    return fi;
}

} // namespace su11::fock
