#pragma once

#include "su11/cmatrix.hpp"
#include "su11/config.hpp"
#include "su11/types.hpp"

#include <array>
#include <vector>

// Truncated two-mode Fock-space density-matrix engine.  States live on the
// product basis |n_A, n_B> with a per-mode cutoff d (default 10); operators
// are dense (d^2 x d^2) complex matrices.  This engine makes no low-gain
// approximation: squeezers are matrix exponentials of the pair-creation
// generator, losses are Kraus channels, detectors are binary no-click/click
// POVMs, and Fisher information is obtained from finite differences of the
// exact outcome probabilities.

namespace su11::fock {

enum class Mode { a = 0, b = 1 };

/// Density matrix on the truncated two-mode space plus a running estimate of
/// the probability weight the truncation cannot represent.
struct TwoModeDensityMatrix {
    int cutoff = 0;
    CMatrix rho;
    double leakage = 0.0;
    bool truncation_warning = false;

    std::size_t dim() const noexcept { return static_cast<std::size_t>(cutoff) * cutoff; }
};

/// Two-mode squeezing unitary exp[g (e^{i theta} a+b+ - e^{-i theta} a b)]
/// on the truncated space, with the vacuum-input leakage estimate
/// tanh^{2d}(g).  The warning flag is set when that estimate exceeds 1e-6.
struct SqueezerOp {
    CMatrix unitary;
    double vacuum_leakage = 0.0;
    bool truncation_warning = false;
};

SqueezerOp two_mode_squeezer(double g, double theta, int d);

TwoModeDensityMatrix vacuum_state(int d);

/// Pure-loss channel with power transmission T on one mode (Kraus form).
TwoModeDensityMatrix loss_channel(const TwoModeDensityMatrix& state, Mode mode, double t);

/// Phase shift phi on one mode: conjugation by diag(e^{i n phi}).
TwoModeDensityMatrix phase_shift(const TwoModeDensityMatrix& state, Mode mode, double phi);

/// Full pipeline: vacuum -> TMS(g1, 0) -> phase(A, phi) -> loss(A, T_A) ->
/// loss(B, T_B) -> TMS(g2, theta) -> loss(A, eta_A) -> loss(B, eta_B).
/// Detection inefficiency is a loss channel in front of an ideal click POVM.
TwoModeDensityMatrix run_interferometer(const ValidatedConfig& cfg, int d);

/// The four binary-detection outcome operators (no/no, click/no, no/click,
/// click/click); they sum to the identity.
struct ClickPovm {
    CMatrix no_no;
    CMatrix click_no;
    CMatrix no_click;
    CMatrix click_click;
};

ClickPovm make_click_povm(int d);

/// Click probabilities p_A = 1 - <P0_A x I>, p_B analogous, and the
/// coincidence p_CC = <(I-P0)_A x (I-P0)_B>.
ClickProbabilities click_probabilities_numeric(const TwoModeDensityMatrix& state);

/// Exact photon-number moments of the state (diagonal sums).
MomentSet photon_moments(const TwoModeDensityMatrix& state);

/// Marginal photon-number distribution of one mode.
std::vector<double> photon_distribution(const TwoModeDensityMatrix& state, Mode mode);

/// Precomputed phase scan.  Everything upstream (the first squeezer acting on
/// vacuum) and downstream (losses, second squeezer, detection) of the phase
/// shifter is phase-independent, so the no-click expectation values are exact
/// trigonometric polynomials of degree d-1 in phi; this pulls the POVM back
/// through the fixed tail once and then evaluates p(phi) in O(d) per phase.
/// Agrees with run_interferometer + click_probabilities_numeric to rounding.
class PhaseScanPlan {
public:
    PhaseScanPlan(const ValidatedConfig& cfg, int d);

    ClickProbabilities probabilities(double phi) const;

    struct OutcomeProbabilities {
        double no_no, click_no, no_click, click_click;
    };
    OutcomeProbabilities outcome_probabilities(double phi) const;

    int cutoff() const noexcept { return d_; }
    double leakage() const noexcept { return leakage_; }
    bool truncation_warning() const noexcept { return warning_; }

private:
    int d_;
    double leakage_;
    bool warning_;
    // harmonics c_k (k = -(d-1) .. d-1) of the three no-click expectations
    std::array<std::vector<cdouble>, 3> coeff_;
};

/// Binary-outcome Fisher information from central finite differences of the
/// exact probabilities, FI = (dp/dphi)^2 / (p(1-p)); fi_at_phi is evaluated
/// at the config's phase and fi_max over a 721-point phase grid refined by
/// golden section.  phi_step must lie in (0, 1e-2]; FI at p < 1e-15 is 0.
/// Throws DerivativeUnstableError when the step-doubling estimate indicates
/// a relative derivative error above 1e-4 at a point of non-negligible FI.
FisherReport fisher_numeric(const ValidatedConfig& cfg, int d, Observable obs,
                            double phi_step = 1e-4);

/// All three observables from one shared phase scan.
std::array<FisherReport, 3> fisher_numeric_all(const ValidatedConfig& cfg, int d,
                                               double phi_step = 1e-4);

/// Diagnostic: Fisher information of the full four-outcome click measurement
/// at the config's phase (sum over outcomes of (dp_i)^2 / p_i).
double fisher_four_outcome(const ValidatedConfig& cfg, int d, double phi_step = 1e-4);

} // namespace su11::fock
