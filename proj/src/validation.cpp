#include "su11/validation.hpp"

#include "su11/analytic.hpp"
#include "su11/bogoliubov.hpp"
#include "su11/calibration.hpp"
#include "su11/cmatrix.hpp"
#include "su11/comparison.hpp"
#include "su11/config.hpp"
#include "su11/fock.hpp"
#include "su11/kernels.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <sstream>

namespace su11::validation {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::string format_config(const InterferometerConfig& c) {
    std::ostringstream s;
    s.precision(12);
    s << "g1=" << c.g1 << " g2=" << c.g2 << " T_A=" << c.t_a << " T_B=" << c.t_b
      << " eta_A=" << c.eta_a << " eta_B=" << c.eta_b << " phi=" << c.phi
      << " theta=" << c.theta;
    return s.str();
}

CheckResult pass(std::string name, std::string detail = {}) {
    return {std::move(name), true, std::move(detail)};
}

CheckResult fail(std::string name, std::string detail) {
    return {std::move(name), false, std::move(detail)};
}

InterferometerConfig random_config(Rng& rng, double g_max, bool perfect_detection) {
    InterferometerConfig c;
    c.g1 = uniform(rng, 0.0, g_max);
    c.g2 = uniform(rng, 0.0, g_max);
    c.t_a = uniform(rng, 0.0, 1.0);
    c.t_b = uniform(rng, 0.0, 1.0);
    c.eta_a = perfect_detection ? 1.0 : uniform(rng, 0.0, 1.0);
    c.eta_b = perfect_detection ? 1.0 : uniform(rng, 0.0, 1.0);
    c.phi = uniform(rng, 0.0, kTwoPi);
    c.theta = 0.0;
    return c;
}

// The independent route for the exact moments: the printed coefficient
// expressions of the composed transfer matrix, evaluated directly.
MomentSet closed_form_moments(const InterferometerConfig& c) {
    using std::cosh;
    using std::sinh;
    using std::sqrt;
    const cdouble i1{0.0, 1.0};
    const double c1 = cosh(c.g1), s1 = sinh(c.g1);
    const double c2 = cosh(c.g2), s2 = sinh(c.g2);
    const double ra = sqrt(c.t_a), rb = sqrt(c.t_b);
    const double aa = 1.0 - c.t_a, ab = 1.0 - c.t_b;
    const cdouble esum = std::exp(-i1 * (c.theta + c.phi));
    const cdouble ephi = std::exp(i1 * c.phi);

    const cdouble script_b = ephi * (ra * s1 * c2 + rb * c1 * s2 * esum);
    const cdouble script_c = ra * c1 * s2 / esum + rb * s1 * c2;
    const cdouble b_star = script_b * sqrt(c.eta_a);
    const cdouble lb_star = -std::exp(-i1 * c.theta) * s2 * sqrt(ab) * sqrt(c.eta_a);
    const cdouble la = -c2 * sqrt(aa) * sqrt(c.eta_a);
    const cdouble a_coef = ephi * (ra * c1 * c2 + rb * s1 * s2 * esum) * sqrt(c.eta_a);
    const cdouble la_t = -std::exp(i1 * c.theta) * s2 * sqrt(aa) * sqrt(c.eta_b);
    const cdouble a_t = script_c * sqrt(c.eta_b);

    MomentSet m;
    m.n_a = std::norm(b_star) + std::norm(lb_star);
    m.n_b = std::norm(la_t) + std::norm(a_t);
    const cdouble cross = la * std::conj(la_t) + a_coef * std::conj(a_t);
    m.n_ab = m.n_a * m.n_b + std::norm(cross);
    return m;
}

// printed scalar closed form for <n_a>
double printed_n_a(const InterferometerConfig& c) {
    const double c1 = std::cosh(c.g1), s1 = std::sinh(c.g1);
    const double c2 = std::cosh(c.g2), s2 = std::sinh(c.g2);
    return c.eta_a *
           (s1 * s1 * c2 * c2 * c.t_a + c1 * c1 * s2 * s2 * c.t_b + s2 * s2 * (1.0 - c.t_b) +
            2.0 * s1 * s2 * c1 * c2 * std::sqrt(c.t_a * c.t_b) * std::cos(c.theta + c.phi));
}

double printed_n_b(const InterferometerConfig& c) {
    const double c1 = std::cosh(c.g1), s1 = std::sinh(c.g1);
    const double c2 = std::cosh(c.g2), s2 = std::sinh(c.g2);
    return c.eta_b *
           (s1 * s1 * c2 * c2 * c.t_b + c1 * c1 * s2 * s2 * c.t_a + s2 * s2 * (1.0 - c.t_a) +
            2.0 * s1 * s2 * c1 * c2 * std::sqrt(c.t_a * c.t_b) * std::cos(c.theta + c.phi));
}

double rel_diff(double a, double b) {
    const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) / scale;
}

} // namespace

CheckResult check_kernel_equivalence(Level level) {
    const std::string name = "kernels.backend_equivalence";
    namespace k = su11::kernels;
    const k::Backend best = k::best_available();
    if (best == k::Backend::scalar) {
        return pass(name, "only the scalar backend is available on this CPU");
    }
    const k::Backend saved = k::active_backend();
    Rng rng(0x5EED0001);
    const int reps = level == Level::full ? 40 : 10;
    const std::size_t sizes[] = {1, 2, 3, 5, 7, 8, 13, 32, 100};
    const auto bits_equal = [](cdouble x, cdouble y) {
        return std::bit_cast<std::uint64_t>(x.real()) == std::bit_cast<std::uint64_t>(y.real()) &&
               std::bit_cast<std::uint64_t>(x.imag()) == std::bit_cast<std::uint64_t>(y.imag());
    };
    for (int rep = 0; rep < reps; ++rep) {
        for (std::size_t n : sizes) {
            std::vector<cdouble> a(n * n), b(n * n), c_scalar(n * n), c_simd(n * n);
            for (auto& v : a) v = {uniform(rng, -1, 1), uniform(rng, -1, 1)};
            for (auto& v : b) v = {uniform(rng, -1, 1), uniform(rng, -1, 1)};
            k::set_backend(k::Backend::scalar);
            k::cmatmul(a.data(), b.data(), c_scalar.data(), n);
            const cdouble t_scalar = k::ctrace_dot(a.data(), b.data(), n);
            k::set_backend(best);
            k::cmatmul(a.data(), b.data(), c_simd.data(), n);
            const cdouble t_simd = k::ctrace_dot(a.data(), b.data(), n);
            k::set_backend(saved);
            for (std::size_t i = 0; i < n * n; ++i) {
                if (!bits_equal(c_scalar[i], c_simd[i])) {
                    return fail(name, "cmatmul mismatch at n=" + std::to_string(n));
                }
            }
            if (!bits_equal(t_scalar, t_simd)) {
                return fail(name, "ctrace_dot mismatch at n=" + std::to_string(n));
            }
        }
    }
    return pass(name, std::string("bit-identical scalar vs ") + std::string(k::backend_name(best)));
}

CheckResult check_analytic_dominance(Level level) {
    const std::string name = "analytic.coincidence_dominance";
    Rng rng(0x5EED0002);
    const int n = level == Level::full ? 10000 : 1000;
    for (int i = 0; i < n; ++i) {
        const InterferometerConfig c = random_config(rng, 0.3, true);
        const ValidatedConfig vc = validate(c);
        const double fi_a = analytic::fisher_max_value(vc, Observable::singles_a);
        const double fi_b = analytic::fisher_max_value(vc, Observable::singles_b);
        const double fi_cc = analytic::fisher_max_value(vc, Observable::coincidences);
        if (fi_cc < std::max(fi_a, fi_b) - 1e-12) {
            return fail(name, "FI_CC < max(FI_A, FI_B) at " + format_config(c));
        }
    }
    return pass(name, std::to_string(n) + " random perfect-detection configs");
}

CheckResult check_analytic_closed_form_vs_grid(Level level) {
    const std::string name = "analytic.closed_form_vs_phase_grid";
    Rng rng(0x5EED0003);
    const int n_cfg = level == Level::full ? 200 : 25;
    constexpr int kGrid = 100000;
    for (int i = 0; i < n_cfg; ++i) {
        InterferometerConfig c;
        c.g1 = uniform(rng, 1e-3, 0.3);
        c.g2 = uniform(rng, 1e-3, 0.3);
        c.t_a = uniform(rng, 0.05, 1.0);
        c.t_b = uniform(rng, 0.05, 1.0);
        c.eta_a = uniform(rng, 0.05, 1.0);
        c.eta_b = uniform(rng, 0.05, 1.0);
        const ValidatedConfig vc = validate(c);
        for (Observable obs :
             {Observable::singles_a, Observable::singles_b, Observable::coincidences}) {
            const double closed = analytic::fisher_max_value(vc, obs);
            double brute = 0.0;
            for (int j = 0; j < kGrid; ++j) {
                InterferometerConfig at = c;
                at.phi = kTwoPi * j / kGrid;
                brute = std::max(brute, analytic::fisher_at_phase(validate(at), obs).fi_at_phi);
            }
            if (rel_diff(closed, brute) > 1e-8) {
                return fail(name, "closed form vs grid gap " +
                                      std::to_string(rel_diff(closed, brute)) + " at " +
                                      format_config(c));
            }
        }
    }
    return pass(name, std::to_string(n_cfg) + " configs x 1e5-point grid, rel err <= 1e-8");
}

CheckResult check_analytic_visibility_bounds(Level level) {
    const std::string name = "analytic.visibility_bounds";
    Rng rng(0x5EED0004);
    const int n = level == Level::full ? 10000 : 1000;
    for (int i = 0; i < n; ++i) {
        const InterferometerConfig c = random_config(rng, 0.3, false);
        const VisibilityTriple v = analytic::visibilities(validate(c));
        if (v.v_a > std::sqrt(c.t_b) + 1e-12 || v.v_b > std::sqrt(c.t_a) + 1e-12) {
            return fail(name, "singles visibility above sqrt(T) at " + format_config(c));
        }
        if (v.v_a < 0.0 || v.v_b < 0.0 || v.v_cc < 0.0 || v.v_cc > 1.0 + 1e-12) {
            return fail(name, "visibility outside [0,1] at " + format_config(c));
        }
    }
    return pass(name, std::to_string(n) + " random configs");
}

CheckResult check_analytic_vcc_loss_balance(Level level) {
    const std::string name = "analytic.vcc_loss_balance";
    Rng rng(0x5EED0005);
    const int n = level == Level::full ? 2000 : 300;
    for (int i = 0; i < n; ++i) {
        InterferometerConfig c;
        c.g1 = uniform(rng, 1e-3, 0.2);
        c.t_a = uniform(rng, 0.01, 1.0);
        c.t_b = uniform(rng, 0.01, 1.0);
        c.eta_a = uniform(rng, 0.0, 1.0);
        c.eta_b = uniform(rng, 0.0, 1.0);
        c.g2 = analytic::loss_balanced_g2(c.g1, c.t_a, c.t_b);
        const VisibilityTriple at_balance = analytic::visibilities(validate(c));
        if (std::abs(at_balance.v_cc - 1.0) > 1e-12) {
            return fail(name, "V_CC != 1 at the loss-balanced gain, " + format_config(c));
        }
        // away from balance the coincidence visibility must drop
        const double detune = uniform(rng, 0.05, 0.5) * (uniform(rng, 0, 1) < 0.5 ? -1.0 : 1.0);
        InterferometerConfig off = c;
        off.g2 = c.g2 * (1.0 + detune);
        const VisibilityTriple v_off = analytic::visibilities(validate(off));
        if (v_off.v_cc >= 1.0 - 1e-12) {
            return fail(name, "V_CC = 1 away from the loss-balanced gain, " + format_config(off));
        }
    }
    return pass(name, std::to_string(n) + " configs, both directions");
}

CheckResult check_analytic_blocking(Level level) {
    const std::string name = "analytic.blocking_kills_interference";
    Rng rng(0x5EED0006);
    const int n = level == Level::full ? 500 : 100;
    for (int i = 0; i < n; ++i) {
        InterferometerConfig c = random_config(rng, 0.25, false);
        c.t_b = 0.0;
        c.phi = 0.0;
        const ClickProbabilities base = analytic::click_probabilities_raw(validate(c));
        for (int j = 1; j <= 16; ++j) {
            InterferometerConfig at = c;
            at.phi = uniform(rng, 0.0, kTwoPi);
            const ClickProbabilities p = analytic::click_probabilities_raw(validate(at));
            if (std::abs(p.p_a - base.p_a) > 1e-15 || std::abs(p.p_b - base.p_b) > 1e-15 ||
                std::abs(p.p_cc - base.p_cc) > 1e-15) {
                return fail(name, "phi-dependence with blocked mode B at " + format_config(at));
            }
        }
    }
    return pass(name, std::to_string(n) + " blocked configs x 16 phases");
}

CheckResult check_analytic_ficc_knee(Level level) {
    const std::string name = "analytic.ficc_knee";
    Rng rng(0x5EED0007);
    const int n = level == Level::full ? 1000 : 150;
    for (int i = 0; i < n; ++i) {
        InterferometerConfig c;
        c.g1 = uniform(rng, 1e-3, 0.2);
        c.t_a = uniform(rng, 0.01, 1.0);
        c.t_b = uniform(rng, 0.01, 1.0);
        c.eta_a = uniform(rng, 0.05, 1.0);
        c.eta_b = uniform(rng, 0.05, 1.0);
        const double knee = analytic::loss_balanced_g2(c.g1, c.t_a, c.t_b);
        const double plateau = 4.0 * c.eta_a * c.eta_b * c.t_a * c.t_b * c.g1 * c.g1;
        double prev = -1.0;
        for (int j = 0; j <= 40; ++j) {
            InterferometerConfig at = c;
            at.g2 = knee * j / 40.0;
            const double fi = analytic::fisher_max_value(validate(at), Observable::coincidences);
            if (fi < prev - 1e-15) {
                return fail(name, "FI_CC decreasing in g2 at " + format_config(at));
            }
            prev = fi;
        }
        for (int j = 0; j <= 40; ++j) {
            InterferometerConfig at = c;
            at.g2 = knee * (1.0 + 1e-6 + 2.0 * j / 40.0);
            const double fi = analytic::fisher_max_value(validate(at), Observable::coincidences);
            if (std::abs(fi - plateau) > 1e-9) {
                return fail(name, "FI_CC off its plateau past the knee at " + format_config(at));
            }
        }
    }
    return pass(name, std::to_string(n) + " configs, monotone below and constant above the knee");
}

CheckResult check_bogoliubov_pseudo_unitarity(Level level) {
    const std::string name = "bogoliubov.pseudo_unitarity";
    Rng rng(0x5EED0008);
    const int n = level == Level::full ? 10000 : 1000;
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        InterferometerConfig c = random_config(rng, 2.0, false);
        c.theta = uniform(rng, 0.0, kTwoPi);
        const double dev = bogoliubov::pseudo_unitarity_deviation(bogoliubov::compose(validate(c)));
        worst = std::max(worst, dev);
        if (dev > 1e-12) {
            return fail(name, "deviation " + std::to_string(dev) + " at " + format_config(c));
        }
    }
    std::ostringstream d;
    d << n << " configs, worst deviation " << worst;
    return pass(name, d.str());
}

CheckResult check_bogoliubov_moments_closed_forms(Level level) {
    const std::string name = "bogoliubov.moments_match_closed_forms";
    Rng rng(0x5EED0009);
    const int n = level == Level::full ? 10000 : 1000;
    for (int i = 0; i < n; ++i) {
        InterferometerConfig c = random_config(rng, 2.0, false);
        c.theta = uniform(rng, 0.0, kTwoPi);
        const MomentSet got = bogoliubov::moments(validate(c));
        const MomentSet want = closed_form_moments(c);
        if (rel_diff(got.n_a, want.n_a) > 1e-12 || rel_diff(got.n_b, want.n_b) > 1e-12 ||
            rel_diff(got.n_ab, want.n_ab) > 1e-12 ||
            rel_diff(got.n_a, printed_n_a(c)) > 1e-12 ||
            rel_diff(got.n_b, printed_n_b(c)) > 1e-12) {
            return fail(name, "moment mismatch at " + format_config(c));
        }
        if (got.n_ab < got.n_a * got.n_b - 1e-12) {
            return fail(name, "n_ab below n_a*n_b at " + format_config(c));
        }
    }
    return pass(name, std::to_string(n) + " configs, rel err <= 1e-12");
}

CheckResult check_bogoliubov_lowgain_vs_analytic(Level level) {
    const std::string name = "bogoliubov.lowgain_vs_analytic";
    Rng rng(0x5EED000A);
    const int n = level == Level::full ? 2000 : 300;
    for (int i = 0; i < n; ++i) {
        InterferometerConfig c = random_config(rng, 0.02, false);
        const ValidatedConfig vc = validate(c);
        const ClickProbabilities exact = bogoliubov::lowgain_click_probabilities(vc);
        const ClickProbabilities approx = analytic::click_probabilities_raw(vc);
        const double g = std::max(c.g1, c.g2);
        const double g4 = g * g * g * g;
        // the coincidence remainder carries the product term n_a*n_b, whose
        // worst corner (g1 = g2, lossless, phi = 0) reaches ~22 g^4
        if (std::abs(exact.p_a - approx.p_a) > 10.0 * g4 ||
            std::abs(exact.p_b - approx.p_b) > 10.0 * g4 ||
            std::abs(exact.p_cc - approx.p_cc) > 30.0 * g4) {
            return fail(name, "low-gain remainder above its O(g^4) bound at " + format_config(c));
        }
    }
    return pass(name, std::to_string(n) + " configs with g <= 0.02");
}

CheckResult check_bogoliubov_theta_phi_shift(Level level) {
    const std::string name = "bogoliubov.theta_phi_shift";
    Rng rng(0x5EED000B);
    const int n = level == Level::full ? 2000 : 300;
    for (int i = 0; i < n; ++i) {
        InterferometerConfig c = random_config(rng, 1.5, false);
        c.theta = uniform(rng, 0.0, kTwoPi);
        InterferometerConfig shifted = c;
        shifted.phi = c.theta + c.phi;
        shifted.theta = 0.0;
        const MomentSet a = bogoliubov::moments(validate(c));
        const MomentSet b = bogoliubov::moments(validate(shifted));
        if (rel_diff(a.n_a, b.n_a) > 1e-12 || rel_diff(a.n_b, b.n_b) > 1e-12 ||
            rel_diff(a.n_ab, b.n_ab) > 1e-12) {
            return fail(name, "moments not a function of theta+phi at " + format_config(c));
        }
    }
    return pass(name, std::to_string(n) + " configs");
}

CheckResult check_fock_channel_properties(Level level) {
    const std::string name = "fock.channel_properties";
    const int d = 10;
    Rng rng(0x5EED000C);
    const int n_cfg = level == Level::full ? 6 : 2;

    // POVM completeness
    const fock::ClickPovm povm = fock::make_click_povm(d);
    CMatrix sum = povm.no_no;
    sum += povm.click_no;
    sum += povm.no_click;
    sum += povm.click_click;
    sum -= CMatrix::identity(static_cast<std::size_t>(d) * d);
    if (sum.max_abs() > 1e-12) {
        return fail(name, "POVM completeness deviation " + std::to_string(sum.max_abs()));
    }

    for (int i = 0; i < n_cfg; ++i) {
        InterferometerConfig c = random_config(rng, 0.0, false);
        c.g1 = uniform(rng, 0.0, 0.3);
        c.g2 = uniform(rng, 0.0, 1.0);
        c.theta = uniform(rng, 0.0, kTwoPi);

        // walk the pipeline, checking state health after every stage
        const fock::SqueezerOp s1 = fock::two_mode_squeezer(c.g1, 0.0, d);
        const fock::SqueezerOp s2 = fock::two_mode_squeezer(c.g2, -c.theta, d);
        fock::TwoModeDensityMatrix state = fock::vacuum_state(d);
        state.rho = s1.unitary * state.rho * s1.unitary.adjoint();
        const double leak = s1.vacuum_leakage + s2.vacuum_leakage;
        auto healthy = [&](const fock::TwoModeDensityMatrix& s, const char* stage) {
            std::string why;
            const double tr = s.rho.trace().real();
            if (std::abs(tr - 1.0) > d * 1e-12 + leak) why = "trace";
            if (s.rho.hermiticity_error() > 1e-12) why = "hermiticity";
            if (why.empty() && !is_positive_semidefinite(s.rho, 1e-10)) why = "positivity";
            if (!why.empty()) {
                throw Error(why + " violated after " + stage + " at " + format_config(c));
            }
        };
        try {
            healthy(state, "PDC1");
            state = fock::phase_shift(state, fock::Mode::a, c.phi);
            healthy(state, "phase");
            state = fock::loss_channel(state, fock::Mode::a, c.t_a);
            healthy(state, "loss A");
            state = fock::loss_channel(state, fock::Mode::b, c.t_b);
            healthy(state, "loss B");
            state.rho = s2.unitary * state.rho * s2.unitary.adjoint();
            healthy(state, "PDC2");
            state = fock::loss_channel(state, fock::Mode::a, c.eta_a);
            healthy(state, "det A");
            state = fock::loss_channel(state, fock::Mode::b, c.eta_b);
            healthy(state, "det B");
        } catch (const Error& e) {
            return fail(name, e.what());
        }

        const ClickProbabilities p = fock::click_probabilities_numeric(state);
        if (p.p_cc > std::min(p.p_a, p.p_b) + 1e-12) {
            return fail(name, "p_CC above min(p_A, p_B) at " + format_config(c));
        }
        // outcome probabilities from the POVM agree with the direct sums
        const double p_cc_povm = trace_of_product(state.rho, povm.click_click).real();
        if (std::abs(p_cc_povm - p.p_cc) > 1e-12) {
            return fail(name, "POVM coincidence probability mismatch at " + format_config(c));
        }
    }
    return pass(name, std::to_string(n_cfg) + " pipelines checked stage by stage at d=10");
}

CheckResult check_fock_squeezer_mean_photon(Level level) {
    const std::string name = "fock.squeezer_mean_photon";
    const int d = 10;
    const int steps = level == Level::full ? 10 : 5;
    double worst_ratio = 0.0;
    for (int i = 0; i <= steps; ++i) {
        const double g = 1.0 * i / steps;
        const fock::SqueezerOp op = fock::two_mode_squeezer(g, 0.0, d);
        fock::TwoModeDensityMatrix state = fock::vacuum_state(d);
        state.rho = op.unitary * state.rho * op.unitary.adjoint();
        const MomentSet m = fock::photon_moments(state);
        const double expect = std::sinh(g) * std::sinh(g);
        // truncation tolerance: mean photons in the discarded tail of the
        // exact state, lambda = tanh^2 g
        const double lam = std::tanh(g) * std::tanh(g);
        const double tail =
            lam < 1.0 ? std::pow(lam, d) * (d - (d - 1) * lam) / (1.0 - lam) : 1.0;
        const double tol = tail + 1e-9;
        if (std::abs(m.n_a - expect) > tol || std::abs(m.n_b - expect) > tol) {
            return fail(name, "<n> vs sinh^2 gap " + std::to_string(std::abs(m.n_a - expect)) +
                                  " above truncation tolerance " + std::to_string(tol) +
                                  " at g=" + std::to_string(g));
        }
        if (g <= 0.8 && std::abs(m.n_a - expect) > 1e-3) {
            return fail(name, "<n> vs sinh^2 gap above 1e-3 at g=" + std::to_string(g));
        }
        if (tol > 0.0) worst_ratio = std::max(worst_ratio, std::abs(m.n_a - expect) / tol);
        if (op.vacuum_leakage > 1e-6 && !op.truncation_warning) {
            return fail(name, "missing truncation warning at g=" + std::to_string(g));
        }
    }
    return pass(name, "g in [0,1] at d=10, worst gap/tolerance = " + std::to_string(worst_ratio));
}

CheckResult check_fock_engine_agreement(Level level) {
    const std::string name = "fock.engine_agreement";
    const int d = 10;
    InterferometerConfig c;
    c.g1 = 0.05;
    c.t_a = 0.9;
    c.t_b = 0.85;
    c.phi = std::numbers::pi / 3.0;

    const std::vector<double> low_g2 =
        level == Level::full ? std::vector<double>{0.005, 0.01, 0.02, 0.05, 0.08, 0.1}
                             : std::vector<double>{0.01, 0.05, 0.1};
    for (double g2 : low_g2) {
        InterferometerConfig at = c;
        at.g2 = g2;
        const ValidatedConfig vc = validate(at);
        const ClickProbabilities pa = analytic::click_probabilities(vc);
        const ClickProbabilities pf =
            fock::click_probabilities_numeric(fock::run_interferometer(vc, d));
        if (rel_diff(pa.p_a, pf.p_a) > 0.05 || rel_diff(pa.p_b, pf.p_b) > 0.05 ||
            rel_diff(pa.p_cc, pf.p_cc) > 0.05) {
            return fail(name, "probability gap above 5% at g2=" + std::to_string(g2));
        }
        const auto fn = fock::fisher_numeric_all(vc, d);
        const Observable obs[3] = {Observable::singles_a, Observable::singles_b,
                                   Observable::coincidences};
        for (int i = 0; i < 3; ++i) {
            const double fa = analytic::fisher_max_value(vc, obs[i]);
            if (rel_diff(fa, fn[i].fi_max) > 0.05) {
                return fail(name, "FI gap above 5% at g2=" + std::to_string(g2));
            }
        }
    }

    // past g2 ~ 0.15 the signed deviation keeps growing (multiphoton breakdown)
    double prev_dev = 0.0;
    bool first = true;
    for (double g2 : {0.15, 0.2, 0.25, 0.3}) {
        InterferometerConfig at = c;
        at.g2 = g2;
        const ValidatedConfig vc = validate(at);
        const double fa = analytic::fisher_max_value(vc, Observable::coincidences);
        const double fn = fock::fisher_numeric(vc, d, Observable::coincidences).fi_max;
        const double dev = (fn - fa) / fa;
        if (!first && dev >= prev_dev) {
            return fail(name, "signed FI deviation not growing at g2=" + std::to_string(g2));
        }
        prev_dev = dev;
        first = false;
    }
    return pass(name, "within 5% for g2 <= 0.1; deviation grows monotonically beyond 0.15");
}

CheckResult check_fock_multiphoton_fraction(Level level) {
    (void)level;
    const std::string name = "fock.multiphoton_fraction";
    InterferometerConfig c;
    c.g1 = 0.05;
    c.g2 = 0.2;
    c.t_a = 0.9;
    c.t_b = 0.85;
    c.phi = std::numbers::pi / 2.0;
    const fock::TwoModeDensityMatrix state = fock::run_interferometer(validate(c), 10);
    for (fock::Mode mode : {fock::Mode::a, fock::Mode::b}) {
        const std::vector<double> dist = fock::photon_distribution(state, mode);
        double multi = 0.0;
        for (std::size_t k = 2; k < dist.size(); ++k) multi += dist[k];
        const double ratio = multi / dist[1];
        if (ratio < 0.025 || ratio > 0.10) {
            return fail(name, "multiphoton/single ratio " + std::to_string(ratio) +
                                  " outside [2.5%, 10%]");
        }
    }
    return pass(name, "multiphoton fraction ~5% (within a factor 2) at g2=0.2");
}

CheckResult check_fock_moment_agreement(Level level) {
    const std::string name = "fock.moment_agreement_bogoliubov";
    Rng rng(0x5EED000D);
    const int n = level == Level::full ? 12 : 4;
    for (int i = 0; i < n; ++i) {
        // the paper's operating regime: first stage near 0.05, second up to 0.3
        InterferometerConfig c = random_config(rng, 0.3, false);
        c.g1 = uniform(rng, 0.0, 0.1);
        c.theta = uniform(rng, 0.0, kTwoPi);
        const ValidatedConfig vc = validate(c);
        const MomentSet exact = bogoliubov::moments(vc);
        const MomentSet numeric = fock::photon_moments(fock::run_interferometer(vc, 10));
        if (std::abs(exact.n_a - numeric.n_a) > 1e-6 ||
            std::abs(exact.n_b - numeric.n_b) > 1e-6 ||
            std::abs(exact.n_ab - numeric.n_ab) > 1e-6) {
            return fail(name, "moment gap above 1e-6 at " + format_config(c));
        }
    }
    return pass(name,
                std::to_string(n) + " configs with g1 <= 0.1, g2 <= 0.3, d=10, abs err <= 1e-6");
}

CheckResult check_comparison_region_consistency(Level level) {
    const std::string name = "comparison.region_consistency";
    Rng rng(0x5EED000E);
    const int n = level == Level::full ? 10000 : 1000;
    constexpr int kGrid = 200;
    const double g1 = 0.05;
    for (int i = 0; i < n; ++i) {
        InterferometerConfig c;
        c.g1 = g1;
        c.t_a = uniform(rng, 0.01, 1.0);
        c.t_b = uniform(rng, 0.01, 1.0);
        c.eta_a = uniform(rng, 0.1, 1.0);
        c.eta_b = uniform(rng, 0.01, 0.999);
        const comparison::RegionVerdict v =
            comparison::singles_vs_coincidence_region(validate(c));
        for (int j = 0; j < kGrid; ++j) {
            const double r = std::pow(10.0, -3.0 + 6.0 * j / (kGrid - 1));
            InterferometerConfig at = c;
            at.g2 = g1 * std::sqrt(r);
            const ValidatedConfig vc = validate(at);
            const double fi_a = analytic::fisher_max_value(vc, Observable::singles_a);
            const double fi_cc = analytic::fisher_max_value(vc, Observable::coincidences);
            const double diff = fi_a - fi_cc;
            if (std::abs(diff) <= 1e-9 * std::max({fi_a, fi_cc, 1e-300})) continue;
            bool predicted = false;
            switch (v.region) {
            case comparison::SinglesRegion::above_beta: predicted = r >= *v.beta; break;
            case comparison::SinglesRegion::outside_alpha_beta:
                predicted = r <= *v.alpha || r >= *v.beta;
                break;
            case comparison::SinglesRegion::always: predicted = true; break;
            case comparison::SinglesRegion::never: predicted = false; break;
            }
            if ((diff > 0.0) != predicted) {
                return fail(name, "classification disagrees with the closed forms at r=" +
                                      std::to_string(r) + ", " + format_config(at));
            }
        }
    }
    return pass(name, std::to_string(n) + " triples x 200-point gain grid");
}

CheckResult check_comparison_table1_thresholds(Level level) {
    const std::string name = "comparison.table1_thresholds";
    Rng rng(0x5EED000F);
    const int n = level == Level::full ? 1000 : 100;
    constexpr int kGrid = 400;
    const double g1 = 0.05;
    const double r_min = 1e-2, r_max = 1e3;
    const double step_ratio = std::pow(r_max / r_min, 1.0 / (kGrid - 1));
    const Observable obs_list[2] = {Observable::singles_a, Observable::coincidences};
    const comparison::AdvantageKind kinds[2] = {comparison::AdvantageKind::conditional,
                                                comparison::AdvantageKind::unconditional};
    for (Observable obs : obs_list) {
        for (comparison::AdvantageKind kind : kinds) {
            for (int i = 0; i < n; ++i) {
                InterferometerConfig c;
                c.g1 = g1;
                c.t_a = uniform(rng, 0.05, 1.0);
                c.t_b = uniform(rng, 0.05, 1.0);
                c.eta_a = uniform(rng, 0.05, 1.0);
                c.eta_b = uniform(rng, 0.05, 1.0);
                const double su2_eta = uniform(rng, 0.05, 1.0);
                const ValidatedConfig vc = validate(c);
                const double w =
                    kind == comparison::AdvantageKind::conditional
                        ? 4.0 * su2_eta * c.t_a * c.t_b / (c.t_a + c.t_b)
                        : 2.0 * su2_eta;
                // skip near-degenerate validity boundaries
                const double asym = (obs == Observable::coincidences)
                                        ? 4.0 * c.eta_a * c.eta_b * c.t_a * c.t_b
                                        : 4.0 * c.eta_a * c.t_a * c.t_b;
                if (std::abs(asym - w) <= 1e-6 * std::max(asym, w)) continue;
                const comparison::AdvantageVerdict verdict =
                    comparison::advantage_threshold(vc, obs, kind, su2_eta);
                double crossed = -1.0;
                for (int j = 0; j < kGrid; ++j) {
                    const double r = r_min * std::pow(step_ratio, j);
                    InterferometerConfig at = c;
                    at.g2 = g1 * std::sqrt(r);
                    const double fi = analytic::fisher_max_value(validate(at), obs);
                    if (fi >= w * g1 * g1 * (1.0 - 1e-12)) {
                        crossed = r;
                        break;
                    }
                }
                std::string problem;
                if (verdict.holds) {
                    const double thr = *verdict.threshold_gain_ratio;
                    if (thr > r_max) {
                        if (crossed > 0.0) problem = "crossing below the declared threshold";
                    } else if (crossed < 0.0) {
                        problem = "no crossing despite a valid threshold";
                    } else if (thr <= r_min) {
                        if (crossed > r_min * step_ratio * 1.0001) {
                            problem = "crossing later than the declared threshold";
                        }
                    } else if (crossed > thr * step_ratio * 1.0001 ||
                               crossed < thr / (step_ratio * 1.0001)) {
                        problem = "crossing more than one grid step from the threshold";
                    }
                } else if (crossed > 0.0) {
                    problem = "crossing although the validity condition fails";
                }
                if (!problem.empty()) {
                    std::ostringstream detail;
                    detail << problem << " [" << to_string(obs) << ", "
                           << (kind == comparison::AdvantageKind::conditional ? "conditional"
                                                                              : "unconditional")
                           << ", su2_eta=" << su2_eta << "] at " << format_config(c);
                    return fail(name, detail.str());
                }
            }
        }
    }
    return pass(name, std::to_string(n) + " configs per Table-1 cell, one-grid-step agreement");
}

CheckResult check_comparison_r_optimality(Level level) {
    const std::string name = "comparison.r_optimality";
    Rng rng(0x5EED0010);
    const int n = level == Level::full ? 200 : 40;
    for (int i = 0; i < n; ++i) {
        comparison::Su2Config s;
        s.alpha_sq = uniform(rng, 1e-4, 0.05);
        s.t_a = uniform(rng, 0.05, 1.0);
        s.t_b = uniform(rng, 0.05, 1.0);
        s.eta_a = uniform(rng, 0.05, 1.0);
        s.eta_b = s.eta_a;
        // phase-maximized FI at reflectivity r (p -> 0 denominator form)
        auto fi_of_r = [&](double r) {
            const double dterm =
                s.eta_a * s.alpha_sq / 2.0 * ((1.0 - r) * s.t_a + r * s.t_b);
            const double eterm =
                s.eta_a * s.alpha_sq * std::sqrt((1.0 - r) * r * s.t_a * s.t_b);
            const double disc = std::max(dterm * dterm - eterm * eterm, 0.0);
            return 2.0 * (dterm - std::sqrt(disc));
        };
        double best_r = 0.0, best = -1.0;
        constexpr int kGrid = 1000;
        for (int j = 0; j <= kGrid; ++j) {
            const double r = static_cast<double>(j) / kGrid;
            const double v = fi_of_r(r);
            if (v > best) {
                best = v;
                best_r = r;
            }
        }
        double lo = std::max(0.0, best_r - 1.0 / kGrid);
        double hi = std::min(1.0, best_r + 1.0 / kGrid);
        while (hi - lo > 1e-9) {
            const double m1 = lo + (hi - lo) / 3.0;
            const double m2 = hi - (hi - lo) / 3.0;
            if (fi_of_r(m1) < fi_of_r(m2)) lo = m1;
            else hi = m2;
        }
        const double found = 0.5 * (lo + hi);
        const double expected = comparison::su2_optimal_reflectivity(s.t_a, s.t_b);
        if (std::abs(found - expected) > 1e-6) {
            return fail(name, "brute-force optimum " + std::to_string(found) +
                                  " differs from T_A/(T_A+T_B) = " + std::to_string(expected));
        }
    }
    return pass(name, std::to_string(n) + " configs, argmax within 1e-6 of R*");
}

CheckResult check_comparison_asymptotic_consistency(Level level) {
    const std::string name = "comparison.asymptotic_consistency";
    Rng rng(0x5EED0011);
    const int n = level == Level::full ? 1000 : 150;
    const double g1 = 0.05;
    const double r = 1e3;
    int tested = 0;
    for (int i = 0; i < n * 4 && tested < n; ++i) {
        InterferometerConfig c;
        c.g1 = g1;
        c.g2 = g1 * std::sqrt(r);
        c.t_a = uniform(rng, 0.05, 1.0);
        c.t_b = uniform(rng, 0.05, 1.0);
        const double eta = uniform(rng, 0.1, 1.0);
        c.eta_a = eta;
        c.eta_b = eta;
        // at finite gain ratio the singles sit slightly below their asymptote,
        // so keep clear of the T_A+T_B = 1 boundary
        if (std::abs(c.t_a + c.t_b - 1.0) < 1e-2) continue;
        ++tested;
        const ValidatedConfig vc = validate(c);
        const double fi_a = analytic::fisher_max_value(vc, Observable::singles_a);
        const double su2 = 4.0 * eta * g1 * g1 * c.t_a * c.t_b / (c.t_a + c.t_b);
        const bool advantage = fi_a > su2 + 1e-9 * std::max(fi_a, su2);
        if (advantage != (c.t_a + c.t_b > 1.0)) {
            return fail(name, "asymptotic comparison flipped at " + format_config(c));
        }
    }
    return pass(name, std::to_string(tested) + " configs at gain ratio 1e3");
}

CheckResult check_calibration_klyshko_roundtrip(Level level) {
    const std::string name = "calibration.klyshko_roundtrip";
    Rng rng(0x5EED0012);
    const int n = level == Level::full ? 2000 : 300;
    for (int i = 0; i < n; ++i) {
        const double eta_a = uniform(rng, 0.01, 1.0);
        const double eta_b = uniform(rng, 0.01, 1.0);
        const double g2 = uniform(rng, 0.01, 0.1);
        const double scale = uniform(rng, 1e3, 1e7);
        // stage-2-only expected counts per Eq. (1) at g1 = 0
        calib::CountRecord rec;
        rec.singles_a = scale * eta_a * g2 * g2;
        rec.singles_b = scale * eta_b * g2 * g2;
        rec.coincidences = scale * eta_a * eta_b * g2 * g2;
        const auto [ea, eb] = calib::klyshko_efficiencies(rec);
        if (rel_diff(ea, eta_a) > 1e-12 || rel_diff(eb, eta_b) > 1e-12) {
            return fail(name, "exact inversion failed at eta_A=" + std::to_string(eta_a) +
                                  " eta_B=" + std::to_string(eta_b));
        }
        // integer-quantized counts recover within the quantization error
        calib::CountRecord q;
        q.singles_a = std::floor(rec.singles_a);
        q.singles_b = std::floor(rec.singles_b);
        q.coincidences = std::floor(std::min(rec.coincidences, std::min(q.singles_a, q.singles_b)));
        if (q.coincidences > 0.0 && q.singles_a > 0.0 && q.singles_b > 0.0) {
            const auto [qa, qb] = calib::klyshko_efficiencies(q);
            const double tol_a = 2.0 / q.singles_b;
            const double tol_b = 2.0 / q.singles_a;
            if (std::abs(qa - eta_a) > eta_a * tol_a + tol_a ||
                std::abs(qb - eta_b) > eta_b * tol_b + tol_b) {
                return fail(name, "quantized inversion outside the quantization error");
            }
        }
    }
    return pass(name, std::to_string(n) + " synthetic count records");
}

CheckResult check_calibration_loss_balanced_inversion(Level level) {
    const std::string name = "calibration.loss_balanced_inversion";
    Rng rng(0x5EED0013);
    const int n = level == Level::full ? 2000 : 300;
    for (int i = 0; i < n; ++i) {
        InterferometerConfig c;
        c.g1 = uniform(rng, 1e-3, 0.2);
        c.t_a = uniform(rng, 1e-3, 1.0);
        c.t_b = uniform(rng, 1e-3, 1.0);
        c.g2 = analytic::loss_balanced_g2(c.g1, c.t_a, c.t_b);
        const VisibilityTriple v = analytic::visibilities(validate(c));
        const auto [ta, tb] = calib::transmissions_at_loss_balance(v.v_a, v.v_b);
        if (std::abs(ta - c.t_a) > 1e-12 || std::abs(tb - c.t_b) > 1e-12) {
            return fail(name, "inversion error above 1e-12 at " + format_config(c));
        }
    }
    return pass(name, std::to_string(n) + " random transmissions, exact to 1e-12");
}

CheckResult check_calibration_recommend_optimality(Level level) {
    const std::string name = "calibration.recommend_optimality";
    Rng rng(0x5EED0014);
    const int n = level == Level::full ? 200 : 40;
    constexpr int kGrid = 501;
    for (int i = 0; i < n; ++i) {
        InterferometerConfig c;
        c.g1 = uniform(rng, 1e-3, 0.1);
        c.t_a = uniform(rng, 0.01, 1.0);
        c.t_b = uniform(rng, 0.01, 1.0);
        c.eta_a = uniform(rng, 0.05, 1.0);
        c.eta_b = uniform(rng, 0.05, 1.0);
        const double g2_max = uniform(rng, 0.5, 3.0) * c.g1;
        const calib::Recommendation rec =
            calib::recommend_strategy(validate(c), g2_max, kGrid);
        for (int j = 0; j < kGrid; ++j) {
            InterferometerConfig at = c;
            at.g2 = g2_max * j / (kGrid - 1);
            const ValidatedConfig vc = validate(at);
            for (Observable obs : {Observable::singles_a, Observable::singles_b,
                                   Observable::coincidences}) {
                if (analytic::fisher_max_value(vc, obs) > rec.fi_max + 1e-15) {
                    return fail(name, "a better (observable, g2) exists at " + format_config(at));
                }
            }
        }
    }
    return pass(name, std::to_string(n) + " constrained recommendations re-checked on the grid");
}

std::vector<CheckResult> run_all(Level level) {
    std::vector<CheckResult> results;
    results.push_back(check_kernel_equivalence(level));
    results.push_back(check_analytic_dominance(level));
    results.push_back(check_analytic_closed_form_vs_grid(level));
    results.push_back(check_analytic_visibility_bounds(level));
    results.push_back(check_analytic_vcc_loss_balance(level));
    results.push_back(check_analytic_blocking(level));
    results.push_back(check_analytic_ficc_knee(level));
    results.push_back(check_bogoliubov_pseudo_unitarity(level));
    results.push_back(check_bogoliubov_moments_closed_forms(level));
    results.push_back(check_bogoliubov_lowgain_vs_analytic(level));
    results.push_back(check_bogoliubov_theta_phi_shift(level));
    results.push_back(check_fock_channel_properties(level));
    results.push_back(check_fock_squeezer_mean_photon(level));
    results.push_back(check_fock_engine_agreement(level));
    results.push_back(check_fock_multiphoton_fraction(level));
    results.push_back(check_fock_moment_agreement(level));
    results.push_back(check_comparison_region_consistency(level));
    results.push_back(check_comparison_table1_thresholds(level));
    results.push_back(check_comparison_r_optimality(level));
    results.push_back(check_comparison_asymptotic_consistency(level));
    results.push_back(check_calibration_klyshko_roundtrip(level));
    results.push_back(check_calibration_loss_balanced_inversion(level));
    results.push_back(check_calibration_recommend_optimality(level));
    return results;
}

} // namespace su11::validation
