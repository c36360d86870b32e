#pragma once

#include "su11/errors.hpp"

namespace su11 {

/// Full parameter set of a lossy two-stage SU(1,1) interferometer:
/// pair-source gains g1/g2, internal power transmissions T_A/T_B, detection
/// efficiencies eta_A/eta_B, internal phase phi and second-stage pump phase
/// theta (radians).
struct InterferometerConfig {
    double g1 = 0.0;
    double g2 = 0.0;
    double t_a = 1.0;
    double t_b = 1.0;
    double eta_a = 1.0;
    double eta_b = 1.0;
    double phi = 0.0;
    double theta = 0.0;
};

/// An InterferometerConfig that passed validation.  Phases are reduced to
/// [0, 2pi) on construction.  Immutable; safe to share across threads.
class ValidatedConfig {
public:
    const InterferometerConfig& get() const noexcept { return cfg_; }
    const InterferometerConfig* operator->() const noexcept { return &cfg_; }

    friend ValidatedConfig validate(const InterferometerConfig& cfg);

private:
    explicit ValidatedConfig(const InterferometerConfig& cfg) : cfg_(cfg) {}
    InterferometerConfig cfg_;
};

/// Checks every field in declaration order (g1, g2, T_A, T_B, eta_A, eta_B,
/// phi, theta) and throws OutOfRangeError naming the first offender.
/// Non-finite values are rejected.  On success the phases are reduced to
/// [0, 2pi).
ValidatedConfig validate(const InterferometerConfig& cfg);

/// Reduces an angle in radians to [0, 2pi).
double reduce_phase(double phi);

} // namespace su11
