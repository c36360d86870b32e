#pragma once

#include "su11/config.hpp"
#include "su11/types.hpp"

#include <optional>

// Classical SU(2) (Mach-Zehnder) reference model and the quantum-vs-classical
// advantage logic.  The comparison convention fixes the resources to the
// photons that pass through the sample: a coherent input with |alpha|^2 =
// 2 g1^2 probes the SU(2) phase element with the same mean photon number as
// the pairs of the SU(1,1) first stage.

namespace su11::comparison {

/// Lossy Mach-Zehnder with a 50:50 input splitter, variable output
/// reflectivity R, and the same loss/detection model as the SU(1,1).
struct Su2Config {
    double alpha_sq = 0.0; // coherent input mean photon number
    double r = 0.5;        // output beam-splitter reflectivity
    double t_a = 1.0;
    double t_b = 1.0;
    double eta_a = 1.0;
    double eta_b = 1.0;
    double phi = 0.0;
};

class ValidatedSu2Config {
public:
    const Su2Config& get() const noexcept { return cfg_; }
    const Su2Config* operator->() const noexcept { return &cfg_; }

    /// True when |alpha|^2 > 0.1, outside the weak-field regime the model
    /// assumes.
    bool beyond_weak_field() const noexcept { return cfg_.alpha_sq > 0.1; }

    friend ValidatedSu2Config validate_su2(const Su2Config& cfg);

private:
    explicit ValidatedSu2Config(const Su2Config& cfg) : cfg_(cfg) {}
    Su2Config cfg_;
};

ValidatedSu2Config validate_su2(const Su2Config& cfg);

/// SU(2) config using the same sample photon budget as an SU(1,1) config
/// (|alpha|^2 = 2 g1^2), with transmissions and efficiencies copied over.
Su2Config su2_from_su11(const ValidatedConfig& cfg, double r = 0.5);

/// Singles click probabilities of the weak-coherent MZI; coincidences vanish
/// at this order, so p_CC = 0.
ClickProbabilities su2_click_probabilities(const ValidatedSu2Config& cfg);

/// Reflectivity balancing the internal losses for the requested output mode,
/// R* = T_A/(T_A+T_B) for mode A (swap for mode B).  Throws
/// DegenerateTransmissionsError when T_A = T_B = 0.
double su2_optimal_reflectivity(double t_a, double t_b, Observable mode = Observable::singles_a);

/// Maximum Fisher information of the SU(2) over phase and reflectivity,
/// FI = 2 eta_max |alpha|^2 T_A T_B / (T_A + T_B); the config's R is ignored.
FisherReport su2_fisher_max(const ValidatedSu2Config& cfg);

/// Which (T_B, eta_B) region governs when singles in A beat coincidences.
enum class SinglesRegion {
    above_beta,          // T_B < eta_B: singles win iff g2^2/g1^2 >= beta
    outside_alpha_beta,  // middle band: singles win iff ratio <= alpha or >= beta
    always,              // high T_B: singles win for every gain ratio
    never                // eta_B = 1 limit with T_B < 1
};

struct RegionVerdict {
    SinglesRegion region;
    std::optional<double> alpha; // lower bound on g2^2/g1^2, where defined
    std::optional<double> beta;  // upper threshold, where defined
    Observable singles_mode;     // which singles the verdict refers to
};

/// Classifies when the singles Fisher information beats the coincidences.
/// For eta_B = 1 the limiting classification is returned (beta diverges).
/// The symmetric verdict for singles in B follows by swapping the labels.
RegionVerdict singles_vs_coincidence_region(const ValidatedConfig& cfg,
                                            Observable mode = Observable::singles_a);

enum class AdvantageKind { conditional, unconditional };

/// Closed-form minimum gain ratio g2^2/g1^2 at which the SU(1,1) observable
/// reaches the SU(2) benchmark, with the validity condition that gates its
/// existence.  `holds` means the advantage is reachable at finite gain ratio;
/// boundary ties count as reachable.
struct AdvantageVerdict {
    AdvantageKind kind = AdvantageKind::conditional;
    Observable observable = Observable::singles_a;
    bool holds = false;
    std::optional<double> threshold_gain_ratio;
    std::string_view binding_condition; // which validity condition applied
};

/// su2_eta_max is the detection efficiency of the classical benchmark system
/// (an independent input; pass max(eta_A, eta_B) for shared detector
/// hardware, 1 for an ideal classical detector).
AdvantageVerdict advantage_threshold(const ValidatedConfig& cfg, Observable obs,
                                     AdvantageKind kind, double su2_eta_max);

/// Asymptotic rules of thumb for identical losses and efficiencies in both
/// systems: conditional iff T_A + T_B > 1; unconditional (against a fully
/// ideal SU(2)) iff 2 max(eta_A, eta_B) T_A T_B > 1.  Strict inequalities.
bool asymptotic_conditional_advantage(const ValidatedConfig& cfg);
bool asymptotic_unconditional_advantage(const ValidatedConfig& cfg);

} // namespace su11::comparison
