#include "su11/config.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using su11::InterferometerConfig;
using su11::OutOfRangeError;
using su11::validate;

TEST_CASE("a config with all defaults in range validates") {
    InterferometerConfig c;
    c.g1 = 0.05;
    c.g2 = 0.03;
    CHECK_NOTHROW(validate(c));
}

TEST_CASE("bound violations name the offending field") {
    InterferometerConfig c;
    c.g1 = 0.05;
    c.g2 = 0.03;

    SUBCASE("transmission above one") {
        c.t_a = 1.2;
        try {
            validate(c);
            FAIL("expected OutOfRangeError");
        } catch (const OutOfRangeError& e) {
            CHECK(e.field() == "T_A");
        }
    }
    SUBCASE("negative gain") {
        c.g1 = -0.01;
        try {
            validate(c);
            FAIL("expected OutOfRangeError");
        } catch (const OutOfRangeError& e) {
            CHECK(e.field() == "g1");
        }
    }
    SUBCASE("non-finite phase") {
        c.phi = std::numeric_limits<double>::quiet_NaN();
        try {
            validate(c);
            FAIL("expected OutOfRangeError");
        } catch (const OutOfRangeError& e) {
            CHECK(e.field() == "phi");
        }
    }
    SUBCASE("infinite gain") {
        c.g2 = std::numeric_limits<double>::infinity();
        try {
            validate(c);
            FAIL("expected OutOfRangeError");
        } catch (const OutOfRangeError& e) {
            CHECK(e.field() == "g2");
        }
    }
}

TEST_CASE("the first offender in declaration order is reported") {
    InterferometerConfig c;
    c.g1 = -1.0;
    c.t_a = 2.0;
    c.eta_b = -0.5;
    try {
        validate(c);
        FAIL("expected OutOfRangeError");
    } catch (const OutOfRangeError& e) {
        CHECK(e.field() == "g1");
    }
}

TEST_CASE("phases are reduced to [0, 2pi) on construction") {
    InterferometerConfig c;
    c.g1 = 0.05;
    c.phi = -1.0;
    c.theta = 4.0 * M_PI + 0.25;
    const auto vc = validate(c);
    CHECK(vc->phi == doctest::Approx(2.0 * M_PI - 1.0).epsilon(1e-14));
    CHECK(vc->theta == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(vc->phi >= 0.0);
    CHECK(vc->phi < 2.0 * M_PI);
}

TEST_CASE("phase reduction is total on finite inputs") {
    for (double phi : {-1e9, -6.283185307179586, -1e-300, 0.0, 6.283185307179586, 1e12}) {
        const double r = su11::reduce_phase(phi);
        CHECK(r >= 0.0);
        CHECK(r < 2.0 * M_PI);
    }
}
