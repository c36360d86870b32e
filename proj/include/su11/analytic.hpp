#pragma once

#include "su11/config.hpp"
#include "su11/types.hpp"

// Closed-form low-gain model of the lossy SU(1,1) interferometer: click
// probabilities, fringe visibilities, phase-resolved and phase-maximized
// classical Fisher information, all as elementary functions of the config.
// Valid for g1, g2 << 1 with binary (click) detectors; the Fock engine covers
// the regime beyond.  All functions are pure.

namespace su11::analytic {

/// Click probabilities of the low-gain model.  Requires theta = 0.
/// Probabilities that come out negative by at most 1e-15 (rounding at
/// interference nulls) are clamped to zero; anything more negative or any
/// probability above 0.1 throws ModelOutOfRegimeError, since beyond ~0.05
/// mean pairs per arm the single-pair picture no longer holds.
ClickProbabilities click_probabilities(const ValidatedConfig& cfg);

/// Same closed forms without the regime guard, for sweeps that intentionally
/// extrapolate the model past its validity (values may exceed 0.1 or 1).
ClickProbabilities click_probabilities_raw(const ValidatedConfig& cfg);

/// Fringe visibilities of singles and coincidences.  Degenerate denominators
/// (g1*g2 = 0 or T_A*T_B = 0 leaves no interference term) report 0 with the
/// defined flag cleared.
VisibilityTriple visibilities(const ValidatedConfig& cfg);

/// Fisher information of one binary observable at the config's phase, using
/// the p -> 0 approximate form (denominator p, not p(1-p)).  Populates
/// fi_at_phi only; use fisher_max for the phase-maximized report.
FisherReport fisher_at_phase(const ValidatedConfig& cfg, Observable obs);

/// Phase-maximized Fisher information.  fi_max is the closed-form maximum;
/// phi_star is located numerically (coarse grid plus golden-section to
/// |dphi| <= 1e-10) and reported in [0, pi].
FisherReport fisher_max(const ValidatedConfig& cfg, Observable obs);

/// Closed-form maximum alone, without the argmax search.  Cheap enough for
/// dense parameter scans.
double fisher_max_value(const ValidatedConfig& cfg, Observable obs);

/// The gain of the second stage that balances the internal losses,
/// g2* = g1 * sqrt(T_A * T_B); coincidence visibility reaches 1 there.
double loss_balanced_g2(double g1, double t_a, double t_b);

} // namespace su11::analytic
