#include "su11/analytic.hpp"

#include "su11/validation.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace su11;

namespace {

InterferometerConfig base_config() {
    InterferometerConfig c;
    c.g1 = 0.05;
    c.g2 = 0.03;
    c.t_a = 0.8;
    c.t_b = 0.7;
    c.eta_a = 0.9;
    c.eta_b = 0.85;
    c.phi = std::numbers::pi / 3.0;
    return c;
}

} // namespace

TEST_CASE("click probabilities: stage-1 only") {
    InterferometerConfig c;
    c.g1 = 0.05;
    c.g2 = 0.0;
    c.phi = 1.234;
    const ClickProbabilities p = analytic::click_probabilities(validate(c));
    CHECK(p.p_a == doctest::Approx(2.5e-3).epsilon(1e-14));
    CHECK(p.p_b == doctest::Approx(2.5e-3).epsilon(1e-14));
    CHECK(p.p_cc == doctest::Approx(2.5e-3).epsilon(1e-14));
}

TEST_CASE("click probabilities: perfect destructive interference") {
    InterferometerConfig c;
    c.g1 = 0.04;
    c.g2 = 0.04;
    c.phi = std::numbers::pi;
    const ClickProbabilities p = analytic::click_probabilities(validate(c));
    CHECK(p.p_a >= 0.0);
    CHECK(p.p_a < 1e-15);
    CHECK(p.p_b < 1e-15);
    CHECK(p.p_cc < 1e-15);
}

TEST_CASE("click probabilities: lossy reference point") {
    const ClickProbabilities p = analytic::click_probabilities(validate(base_config()));
    CHECK(p.p_a == doctest::Approx(3.62024749442896527e-03).epsilon(1e-12));
    CHECK(p.p_b == doctest::Approx(3.20662263362735470e-03).epsilon(1e-12));
    CHECK(p.p_cc == doctest::Approx(2.61821037026461990e-03).epsilon(1e-12));
}

TEST_CASE("regime guard") {
    InterferometerConfig c;
    c.g1 = 0.4;
    c.g2 = 0.4;
    c.phi = 0.0;
    CHECK_THROWS_AS(analytic::click_probabilities(validate(c)), ModelOutOfRegimeError);
    // the unguarded variant extrapolates
    CHECK(analytic::click_probabilities_raw(validate(c)).p_a > 0.1);
    // the closed-form model is defined only at theta = 0
    InterferometerConfig t = base_config();
    t.theta = 0.3;
    CHECK_THROWS_AS(analytic::click_probabilities(validate(t)), OutOfRangeError);
}

TEST_CASE("visibilities: lossless balanced gains give unit visibility") {
    InterferometerConfig c;
    c.g1 = 0.05;
    c.g2 = 0.05;
    const VisibilityTriple v = analytic::visibilities(validate(c));
    CHECK(v.v_a == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(v.v_b == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(v.v_cc == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("visibilities: coincidence visibility peaks at the loss-balanced gain") {
    InterferometerConfig c;
    c.g1 = 0.05;
    c.t_a = 0.8;
    c.t_b = 0.7;
    c.g2 = c.g1 * std::sqrt(0.56);
    const VisibilityTriple v = analytic::visibilities(validate(c));
    CHECK(std::abs(v.v_cc - 1.0) < 1e-12);
}

TEST_CASE("visibilities: fixed lossy point and fringe-extraction cross-check") {
    InterferometerConfig c;
    c.g1 = 0.05;
    c.g2 = 0.05;
    c.t_a = 0.8;
    c.t_b = 0.7;
    const VisibilityTriple v = analytic::visibilities(validate(c));
    CHECK(v.v_a == doctest::Approx(0.831479419283098).epsilon(1e-12));
    CHECK(v.v_cc == doctest::Approx(0.959399329942036).epsilon(1e-12));

    // independent extraction: (p_max - p_min) / (p_max + p_min) over a phase sweep
    double p_max = 0.0, p_min = 1.0;
    for (int i = 0; i <= 2000; ++i) {
        InterferometerConfig at = c;
        at.phi = 2.0 * std::numbers::pi * i / 2000;
        const double p = analytic::click_probabilities_raw(validate(at)).p_a;
        p_max = std::max(p_max, p);
        p_min = std::min(p_min, p);
    }
    CHECK(v.v_a == doctest::Approx((p_max - p_min) / (p_max + p_min)).epsilon(1e-9));
}

TEST_CASE("visibilities: degenerate denominators follow the zero/undefined convention") {
    InterferometerConfig c;
    c.g1 = 0.0;
    c.g2 = 0.0;
    const VisibilityTriple v = analytic::visibilities(validate(c));
    CHECK_FALSE(v.defined_a);
    CHECK_FALSE(v.defined_cc);
    CHECK(v.v_a == 0.0);
    CHECK(v.v_cc == 0.0);
}

TEST_CASE("fisher at phase: zero at phi = 0") {
    InterferometerConfig c = base_config();
    c.phi = 0.0;
    for (Observable obs :
         {Observable::singles_a, Observable::singles_b, Observable::coincidences}) {
        CHECK(analytic::fisher_at_phase(validate(c), obs).fi_at_phi == doctest::Approx(0.0));
    }
}

TEST_CASE("fisher at phase: balanced lossless coincidences give 2 g^2 at phi = pi/2") {
    for (double g : {0.02, 0.05}) {
        InterferometerConfig c;
        c.g1 = g;
        c.g2 = g;
        c.phi = std::numbers::pi / 2.0;
        const FisherReport r =
            analytic::fisher_at_phase(validate(c), Observable::coincidences);
        CHECK(r.fi_at_phi == doctest::Approx(2.0 * g * g).epsilon(1e-12));
    }
}

TEST_CASE("fisher at phase: lossy singles reference value") {
    InterferometerConfig c = base_config();
    c.g2 = 0.02;
    c.phi = std::numbers::pi / 2.0;
    const FisherReport r = analytic::fisher_at_phase(validate(c), Observable::singles_a);
    CHECK(r.fi_at_phi == doctest::Approx(8.40000000000000035e-04).epsilon(1e-12));

    // brute-force oracle: (dp/dphi)^2 / p from the click probabilities
    const double h = 1e-6;
    InterferometerConfig cp = c, cm = c;
    cp.phi += h;
    cm.phi -= h;
    const double p = analytic::click_probabilities_raw(validate(c)).p_a;
    const double dp = (analytic::click_probabilities_raw(validate(cp)).p_a -
                       analytic::click_probabilities_raw(validate(cm)).p_a) /
                      (2.0 * h);
    CHECK(r.fi_at_phi == doctest::Approx(dp * dp / p).epsilon(1e-8));
}

TEST_CASE("fisher max: saturated coincidences above the loss-balanced gain") {
    InterferometerConfig c;
    c.g1 = 0.05;
    c.g2 = 0.1;
    const FisherReport r = analytic::fisher_max(validate(c), Observable::coincidences);
    CHECK(r.fi_max == doctest::Approx(0.01).epsilon(1e-12)); // 4 g1^2
}

TEST_CASE("fisher max: plateau value at and beyond loss balance") {
    InterferometerConfig c;
    c.g1 = 0.05;
    c.t_a = 0.8;
    c.t_b = 0.7;
    c.eta_a = 0.9;
    c.eta_b = 0.85;
    const double plateau = 4.0 * c.eta_a * c.eta_b * c.t_a * c.t_b * c.g1 * c.g1;
    for (double f : {1.0, 1.5, 4.0}) {
        c.g2 = f * analytic::loss_balanced_g2(c.g1, c.t_a, c.t_b);
        CHECK(analytic::fisher_max_value(validate(c), Observable::coincidences) ==
              doctest::Approx(plateau).epsilon(1e-12));
    }
}

TEST_CASE("fisher max: lossless singles coincide with coincidences") {
    InterferometerConfig c;
    c.g1 = 0.05;
    c.g2 = 0.021;
    const ValidatedConfig vc = validate(c);
    const double fa = analytic::fisher_max_value(vc, Observable::singles_a);
    const double fb = analytic::fisher_max_value(vc, Observable::singles_b);
    const double fcc = analytic::fisher_max_value(vc, Observable::coincidences);
    CHECK(fa == doctest::Approx(fcc).epsilon(1e-12));
    CHECK(fb == doctest::Approx(fcc).epsilon(1e-12));
}

TEST_CASE("fisher max: argmax agrees with the closed-form stationary point") {
    std::mt19937_64 rng(314);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        InterferometerConfig c;
        c.g1 = 0.001 + 0.2 * u(rng);
        c.g2 = 0.001 + 0.2 * u(rng);
        c.t_a = 0.05 + 0.95 * u(rng);
        c.t_b = 0.05 + 0.95 * u(rng);
        c.eta_a = 0.05 + 0.95 * u(rng);
        c.eta_b = 0.05 + 0.95 * u(rng);
        const ValidatedConfig vc = validate(c);
        for (Observable obs :
             {Observable::singles_a, Observable::singles_b, Observable::coincidences}) {
            const FisherReport r = analytic::fisher_max(vc, obs);
            const double w = obs == Observable::singles_a   ? c.t_a
                             : obs == Observable::singles_b ? c.t_b
                                                            : c.t_a * c.t_b;
            const double dd = w * c.g1 * c.g1 + c.g2 * c.g2;
            const double ee = std::sqrt(c.t_a * c.t_b) * c.g1 * c.g2;
            const double x = (-dd + std::sqrt(dd * dd - 4.0 * ee * ee)) / (2.0 * ee);
            const double phi_expected = std::acos(std::clamp(x, -1.0, 1.0));
            CHECK(std::abs(r.phi_star - phi_expected) < 1e-7);
            CHECK(r.fi_at_phi <= r.fi_max * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("fisher report bound: never above 4 eta_max g1^2 T_A T_B") {
    std::mt19937_64 rng(271);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
        InterferometerConfig c;
        c.g1 = 0.25 * u(rng);
        c.g2 = 0.25 * u(rng);
        c.t_a = u(rng);
        c.t_b = u(rng);
        c.eta_a = u(rng);
        c.eta_b = u(rng);
        const ValidatedConfig vc = validate(c);
        const double bound =
            4.0 * std::max(c.eta_a, c.eta_b) * c.g1 * c.g1 * c.t_a * c.t_b;
        for (Observable obs :
             {Observable::singles_a, Observable::singles_b, Observable::coincidences}) {
            CHECK(analytic::fisher_max_value(vc, obs) <= bound + 1e-9 * std::max(bound, 1e-300));
        }
    }
}

TEST_CASE("loss-balanced gain") {
    CHECK(analytic::loss_balanced_g2(0.05, 1.0, 1.0) == doctest::Approx(0.05));
    CHECK(analytic::loss_balanced_g2(0.05, 0.8, 0.7) ==
          doctest::Approx(3.74165738677394166e-02).epsilon(1e-15));
    CHECK(analytic::loss_balanced_g2(0.0, 0.3, 0.9) == 0.0);
}

TEST_CASE("analytic property suites (fast)") {
    using namespace su11::validation;
    for (auto check : {check_analytic_dominance, check_analytic_closed_form_vs_grid,
                       check_analytic_visibility_bounds, check_analytic_vcc_loss_balance,
                       check_analytic_blocking, check_analytic_ficc_knee}) {
        const CheckResult r = check(Level::fast);
        INFO(r.name, ": ", r.detail);
        CHECK(r.passed);
    }
}
