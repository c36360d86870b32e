#include "su11/config.hpp"

#include <cmath>
#include <string>

namespace su11 {

namespace {

void check_finite(const char* name, double v) {
    if (!std::isfinite(v)) {
        throw OutOfRangeError(name, "must be finite, got " + std::to_string(v));
    }
}

void check_gain(const char* name, double v) {
    check_finite(name, v);
    if (v < 0.0) {
        throw OutOfRangeError(name, "gain must be >= 0, got " + std::to_string(v));
    }
}

void check_unit_interval(const char* name, double v) {
    check_finite(name, v);
    if (v < 0.0 || v > 1.0) {
        throw OutOfRangeError(name, "must be in [0, 1], got " + std::to_string(v));
    }
}

} // namespace

double reduce_phase(double phi) {
    constexpr double two_pi = 6.283185307179586476925286766559;
    double r = std::fmod(phi, two_pi);
    if (r < 0.0) r += two_pi;
    if (r >= two_pi) r = 0.0; // fmod rounding at the boundary
    return r;
}

ValidatedConfig validate(const InterferometerConfig& cfg) {
    check_gain("g1", cfg.g1);
    check_gain("g2", cfg.g2);
    check_unit_interval("T_A", cfg.t_a);
    check_unit_interval("T_B", cfg.t_b);
    check_unit_interval("eta_A", cfg.eta_a);
    check_unit_interval("eta_B", cfg.eta_b);
    check_finite("phi", cfg.phi);
    check_finite("theta", cfg.theta);

    InterferometerConfig reduced = cfg;
    reduced.phi = reduce_phase(cfg.phi);
    reduced.theta = reduce_phase(cfg.theta);
    return ValidatedConfig(reduced);
}

} // namespace su11
