#include "su11/fock.hpp"

#include "su11/analytic.hpp"
#include "su11/bogoliubov.hpp"
#include "su11/validation.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace su11;
using fock::Mode;

namespace {

constexpr int kDim = 10;

std::size_t idx(int a, int b) { return static_cast<std::size_t>(a) * kDim + b; }

} // namespace

TEST_CASE("squeezer at g = 0 is the identity") {
    const fock::SqueezerOp op = fock::two_mode_squeezer(0.0, 0.0, kDim);
    CMatrix d = op.unitary;
    d -= CMatrix::identity(op.unitary.dim());
    CHECK(d.max_abs() < 1e-15);
    CHECK(op.vacuum_leakage == 0.0);
    CHECK_FALSE(op.truncation_warning);
}

TEST_CASE("squeezer is unitary on the truncated space") {
    const fock::SqueezerOp op = fock::two_mode_squeezer(0.4, 1.1, kDim);
    CMatrix d = op.unitary * op.unitary.adjoint();
    d -= CMatrix::identity(op.unitary.dim());
    CHECK(d.max_abs() < 1e-13);
}

TEST_CASE("squeezed vacuum pair amplitude ratio equals tanh^2 g") {
    const fock::SqueezerOp op = fock::two_mode_squeezer(0.05, 0.0, kDim);
    fock::TwoModeDensityMatrix s = fock::vacuum_state(kDim);
    s.rho = op.unitary * s.rho * op.unitary.adjoint();
    const double ratio = s.rho(idx(1, 1), idx(1, 1)).real() / s.rho(0, 0).real();
    const double th2 = std::tanh(0.05) * std::tanh(0.05);
    CHECK(ratio == doctest::Approx(th2).epsilon(1e-10));
    CHECK(th2 == doctest::Approx(2.49583922843212838e-03).epsilon(1e-14));
}

TEST_CASE("squeezer mean photon number vs sinh^2 g across the gain range") {
    // includes g = 1, the top of the range the simulations use
    const auto r = validation::check_fock_squeezer_mean_photon(validation::Level::full);
    INFO(r.detail);
    CHECK(r.passed);
    const fock::SqueezerOp op = fock::two_mode_squeezer(1.0, 0.0, kDim);
    CHECK(op.truncation_warning); // tanh^20(1) ~ 4.3e-3 exceeds 1e-6
    fock::TwoModeDensityMatrix s = fock::vacuum_state(kDim);
    s.rho = op.unitary * s.rho * op.unitary.adjoint();
    const MomentSet m = fock::photon_moments(s);
    CHECK(m.n_a == doctest::Approx(1.38109784554181547).epsilon(0.05));
}

TEST_CASE("loss channel basics") {
    const fock::SqueezerOp op = fock::two_mode_squeezer(0.3, 0.0, kDim);
    fock::TwoModeDensityMatrix s = fock::vacuum_state(kDim);
    s.rho = op.unitary * s.rho * op.unitary.adjoint();

    SUBCASE("T = 1 is the identity channel") {
        const fock::TwoModeDensityMatrix out = fock::loss_channel(s, Mode::a, 1.0);
        CMatrix d = out.rho;
        d -= s.rho;
        CHECK(d.max_abs() < 1e-15);
    }
    SUBCASE("T = 0 resets the mode to vacuum") {
        const fock::TwoModeDensityMatrix out = fock::loss_channel(s, Mode::a, 0.0);
        const std::vector<double> dist = fock::photon_distribution(out, Mode::a);
        CHECK(dist[0] == doctest::Approx(1.0).epsilon(1e-12));
        for (std::size_t n = 1; n < dist.size(); ++n) CHECK(std::abs(dist[n]) < 1e-14);
    }
    SUBCASE("trace is preserved") {
        const fock::TwoModeDensityMatrix out = fock::loss_channel(s, Mode::b, 0.37);
        CHECK(std::abs(out.rho.trace().real() - s.rho.trace().real()) < 1e-12);
    }
}

TEST_CASE("loss channel on a single photon is a binomial mixture") {
    fock::TwoModeDensityMatrix s = fock::vacuum_state(kDim);
    s.rho(0, 0) = 0.0;
    s.rho(idx(1, 0), idx(1, 0)) = 1.0;
    const fock::TwoModeDensityMatrix out = fock::loss_channel(s, Mode::a, 0.7);
    CHECK(out.rho(idx(1, 0), idx(1, 0)).real() == doctest::Approx(0.7).epsilon(1e-14));
    CHECK(out.rho(idx(0, 0), idx(0, 0)).real() == doctest::Approx(0.3).epsilon(1e-14));
}

TEST_CASE("phase shift basics") {
    const fock::SqueezerOp op = fock::two_mode_squeezer(0.2, 0.0, kDim);
    fock::TwoModeDensityMatrix s = fock::vacuum_state(kDim);
    s.rho = op.unitary * s.rho * op.unitary.adjoint();

    SUBCASE("phi = 0 and phi = 2pi are the identity") {
        for (double phi : {0.0, 2.0 * std::numbers::pi}) {
            const fock::TwoModeDensityMatrix out = fock::phase_shift(s, Mode::a, phi);
            CMatrix d = out.rho;
            d -= s.rho;
            CHECK(d.max_abs() < 1e-12);
        }
    }
    SUBCASE("single-excitation coherence picks up e^{i phi}") {
        fock::TwoModeDensityMatrix coh = fock::vacuum_state(kDim);
        coh.rho(0, 0) = 0.0;
        // (|1,0> + |0,1>)/sqrt(2)
        coh.rho(idx(1, 0), idx(1, 0)) = 0.5;
        coh.rho(idx(0, 1), idx(0, 1)) = 0.5;
        coh.rho(idx(1, 0), idx(0, 1)) = 0.5;
        coh.rho(idx(0, 1), idx(1, 0)) = 0.5;
        const double phi = 0.83;
        const fock::TwoModeDensityMatrix out = fock::phase_shift(coh, Mode::a, phi);
        const cdouble expected = 0.5 * std::exp(cdouble{0.0, phi});
        CHECK(std::abs(out.rho(idx(1, 0), idx(0, 1)) - expected) < 1e-14);
    }
    SUBCASE("spectrum and trace are untouched") {
        const fock::TwoModeDensityMatrix out = fock::phase_shift(s, Mode::b, 1.7);
        CHECK(std::abs(out.rho.trace().real() - 1.0) < 1e-13);
        CHECK(is_positive_semidefinite(out.rho, 1e-12));
    }
}

TEST_CASE("pipeline with zero gain returns vacuum") {
    InterferometerConfig c;
    const fock::TwoModeDensityMatrix out = fock::run_interferometer(validate(c), kDim);
    CHECK(out.rho(0, 0).real() == doctest::Approx(1.0).epsilon(1e-13));
    const ClickProbabilities p = fock::click_probabilities_numeric(out);
    CHECK(p.p_a == doctest::Approx(0.0));
    CHECK(p.p_b == doctest::Approx(0.0));
    CHECK(p.p_cc == doctest::Approx(0.0));
}

TEST_CASE("pipeline destructive interference suppresses clicks") {
    InterferometerConfig c;
    c.g1 = 0.05;
    c.g2 = 0.05;
    c.phi = std::numbers::pi;
    const ClickProbabilities p =
        fock::click_probabilities_numeric(fock::run_interferometer(validate(c), kDim));
    CHECK(p.p_a < 1e-6);
    CHECK(p.p_b < 1e-6);
    CHECK(p.p_cc < 1e-6);
}

TEST_CASE("click probabilities on basis states") {
    fock::TwoModeDensityMatrix s = fock::vacuum_state(kDim);
    SUBCASE("vacuum never clicks") {
        const ClickProbabilities p = fock::click_probabilities_numeric(s);
        CHECK(p.p_a == 0.0);
        CHECK(p.p_cc == 0.0);
    }
    SUBCASE("|1,1> always clicks in coincidence") {
        s.rho(0, 0) = 0.0;
        s.rho(idx(1, 1), idx(1, 1)) = 1.0;
        const ClickProbabilities p = fock::click_probabilities_numeric(s);
        CHECK(p.p_a == doctest::Approx(1.0));
        CHECK(p.p_b == doctest::Approx(1.0));
        CHECK(p.p_cc == doctest::Approx(1.0));
    }
}

TEST_CASE("two-mode squeezed vacuum clicks only in coincidence") {
    const double g = 0.05;
    const fock::SqueezerOp op = fock::two_mode_squeezer(g, 0.0, kDim);
    fock::TwoModeDensityMatrix s = fock::vacuum_state(kDim);
    s.rho = op.unitary * s.rho * op.unitary.adjoint();
    const ClickProbabilities p = fock::click_probabilities_numeric(s);
    // brute-force oracle: photon pairs |n,n| with P(n) = sech^2 g tanh^{2n} g,
    // so a click on either arm is 1 - P(0)
    double p0 = 0.0;
    const double sech2 = 1.0 / (std::cosh(g) * std::cosh(g));
    p0 = sech2; // only n = 0 leaves arm A empty
    CHECK(p.p_a == doctest::Approx(1.0 - p0).epsilon(1e-10));
    CHECK(p.p_b == doctest::Approx(1.0 - p0).epsilon(1e-10));
    CHECK(p.p_cc == doctest::Approx(1.0 - p0).epsilon(1e-10));
    CHECK(p.p_cc <= std::min(p.p_a, p.p_b) + 1e-14);
}

TEST_CASE("phase-scan plan reproduces the full pipeline") {
    std::mt19937_64 rng(404);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 4; ++i) {
        InterferometerConfig c;
        c.g1 = 0.02 + 0.1 * u(rng);
        c.g2 = 0.3 * u(rng);
        c.t_a = 0.2 + 0.8 * u(rng);
        c.t_b = 0.2 + 0.8 * u(rng);
        c.eta_a = 0.2 + 0.8 * u(rng);
        c.eta_b = 0.2 + 0.8 * u(rng);
        c.phi = 2.0 * std::numbers::pi * u(rng);
        c.theta = 2.0 * std::numbers::pi * u(rng);
        const ValidatedConfig vc = validate(c);
        const fock::PhaseScanPlan plan(vc, kDim);
        const ClickProbabilities direct =
            fock::click_probabilities_numeric(fock::run_interferometer(vc, kDim));
        const ClickProbabilities scanned = plan.probabilities(c.phi);
        CHECK(std::abs(direct.p_a - scanned.p_a) < 1e-13);
        CHECK(std::abs(direct.p_b - scanned.p_b) < 1e-13);
        CHECK(std::abs(direct.p_cc - scanned.p_cc) < 1e-13);

        const auto o = plan.outcome_probabilities(c.phi);
        CHECK(o.no_no + o.click_no + o.no_click + o.click_click ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("numeric fisher information: no photons, no information") {
    InterferometerConfig c;
    c.phi = 0.4;
    const FisherReport r = fock::fisher_numeric(validate(c), kDim, Observable::coincidences);
    CHECK(r.fi_at_phi == 0.0);
    CHECK(r.fi_max == 0.0);
}

TEST_CASE("numeric fisher agrees with the closed form at low gain") {
    InterferometerConfig c;
    c.g1 = 0.05;
    c.phi = 1.0;
    for (double g2 : {0.01, 0.03}) {
        c.g2 = g2;
        const ValidatedConfig vc = validate(c);
        const FisherReport num = fock::fisher_numeric(vc, kDim, Observable::coincidences);
        const double closed = analytic::fisher_max_value(vc, Observable::coincidences);
        CHECK(num.fi_max == doctest::Approx(closed).epsilon(0.01));
        CHECK(num.phi_star <= std::numbers::pi + 1e-9);
    }
}

TEST_CASE("numeric fisher at the balanced lossless point matches 2 g^2") {
    InterferometerConfig c;
    c.g1 = 0.05;
    c.g2 = 0.05;
    c.phi = std::numbers::pi / 2.0;
    const FisherReport r = fock::fisher_numeric(validate(c), kDim, Observable::coincidences);
    CHECK(r.fi_at_phi == doctest::Approx(2.0 * 0.05 * 0.05).epsilon(0.01));
}

TEST_CASE("phi_step is validated") {
    InterferometerConfig c;
    c.g1 = 0.05;
    const ValidatedConfig vc = validate(c);
    CHECK_THROWS_AS(fock::fisher_numeric(vc, kDim, Observable::singles_a, 0.0),
                    OutOfRangeError);
    CHECK_THROWS_AS(fock::fisher_numeric(vc, kDim, Observable::singles_a, 0.05),
                    OutOfRangeError);
}

TEST_CASE("a coarse step on a harmonic-rich state trips the derivative guard") {
    InterferometerConfig c;
    c.g1 = 0.6;
    c.g2 = 0.6;
    c.phi = 2.0;
    const ValidatedConfig vc = validate(c);
    CHECK_NOTHROW(fock::fisher_numeric(vc, kDim, Observable::coincidences, 1e-4));
    CHECK_THROWS_AS(fock::fisher_numeric(vc, kDim, Observable::coincidences, 1e-2),
                    DerivativeUnstableError);
}

TEST_CASE("loss channel rejects transmissions outside [0, 1]") {
    const fock::TwoModeDensityMatrix s = fock::vacuum_state(kDim);
    CHECK_THROWS_AS(fock::loss_channel(s, Mode::a, -0.1), OutOfRangeError);
    CHECK_THROWS_AS(fock::loss_channel(s, Mode::b, 1.1), OutOfRangeError);
}

TEST_CASE("state-health predicates flag corrupted states") {
    // the kind of damage a sign error in a channel would cause
    const fock::SqueezerOp op = fock::two_mode_squeezer(0.2, 0.0, kDim);
    fock::TwoModeDensityMatrix s = fock::vacuum_state(kDim);
    s.rho = op.unitary * s.rho * op.unitary.adjoint();

    SUBCASE("trace loss") {
        s.rho *= 0.9;
        CHECK(std::abs(s.rho.trace().real() - 1.0) > kDim * 1e-12);
    }
    SUBCASE("hermiticity damage") {
        s.rho(idx(0, 0), idx(1, 1)) += 1e-6;
        CHECK(s.rho.hermiticity_error() > 1e-12);
    }
    SUBCASE("negative population") {
        s.rho(idx(2, 2), idx(2, 2)) = -1e-6;
        CHECK_FALSE(is_positive_semidefinite(s.rho, 1e-10));
    }
}

TEST_CASE("four-outcome fisher never falls below the best binary observable") {
    InterferometerConfig c;
    c.g1 = 0.05;
    c.g2 = 0.04;
    c.t_a = 0.8;
    c.t_b = 0.75;
    c.phi = 1.1;
    const ValidatedConfig vc = validate(c);
    const double four = fock::fisher_four_outcome(vc, kDim);
    const auto all = fock::fisher_numeric_all(vc, kDim);
    for (const FisherReport& r : all) {
        CHECK(four >= r.fi_at_phi - 1e-12);
    }
}

TEST_CASE("pipeline leakage estimate and warning propagate") {
    InterferometerConfig c;
    c.g1 = 0.05;
    c.g2 = 1.0;
    const fock::TwoModeDensityMatrix out = fock::run_interferometer(validate(c), kDim);
    CHECK(out.leakage > 1e-6);
    CHECK(out.truncation_warning);
    InterferometerConfig small;
    small.g1 = 0.05;
    small.g2 = 0.05;
    const fock::TwoModeDensityMatrix ok = fock::run_interferometer(validate(small), kDim);
    CHECK(ok.leakage < 1e-6);
    CHECK_FALSE(ok.truncation_warning);
}

TEST_CASE("fock property suites (fast)") {
    using namespace su11::validation;
    for (auto check : {check_fock_channel_properties, check_fock_multiphoton_fraction,
                       check_fock_moment_agreement}) {
        const CheckResult r = check(Level::fast);
        INFO(r.name, ": ", r.detail);
        CHECK(r.passed);
    }
}

TEST_CASE("exact moments match the Bogoliubov engine at a reference point") {
    InterferometerConfig c;
    c.g1 = 0.05;
    c.g2 = 0.03;
    c.t_a = 0.8;
    c.t_b = 0.7;
    c.phi = std::numbers::pi / 3.0;
    const ValidatedConfig vc = validate(c);
    const MomentSet numeric = fock::photon_moments(fock::run_interferometer(vc, kDim));
    CHECK(numeric.n_a == doctest::Approx(4.03035980481997180e-03).epsilon(1e-9));
    const MomentSet exact = bogoliubov::moments(vc);
    CHECK(std::abs(numeric.n_ab - exact.n_ab) < 1e-9);
}
