#pragma once

#include "su11/config.hpp"
#include "su11/types.hpp"

#include <optional>
#include <string>
#include <vector>

// Experimental characterization workflow: Klyshko detection efficiencies from
// a stage-2-only run, internal transmissions from a visibility sweep or from
// the loss-balanced closed-form inversion, and a measurement-strategy
// recommendation built on the resulting model.

namespace su11::calib {

/// Raw event counts from one integration window.  Expected values and integer
/// counts are accepted interchangeably; no Poisson uncertainty is propagated.
struct CountRecord {
    double singles_a = 0.0;
    double singles_b = 0.0;
    double coincidences = 0.0;
    std::string label;

    /// Checks counts are finite, nonnegative and coincidences <= min(singles).
    void check() const;
};

enum class CalibrationMethod { klyshko, visibility_fit, loss_balanced_inversion };

struct CalibrationResult {
    double eta_a = 1.0;
    double eta_b = 1.0;
    double t_a = 1.0;
    double t_b = 1.0;
    double residual = 0.0;
    CalibrationMethod method = CalibrationMethod::klyshko;
};

/// Detection efficiencies from a run with only the second stage pumped:
/// eta_A = coincidences / singles_B and eta_B = coincidences / singles_A.
/// Throws ZeroCountsError when any count is zero.
std::pair<double, double> klyshko_efficiencies(const CountRecord& counts);

/// One measured visibility triple at a known g2.
struct VisibilitySample {
    double g2 = 0.0;
    double v_a = 0.0;
    double v_b = 0.0;
    double v_cc = 0.0;
};

/// Least-squares fit of (T_A, T_B) in [0,1]^2 to the closed-form visibilities
/// over a g2 sweep (all three channels, unweighted).  Derivative-free: coarse
/// grid seed plus compass-search refinement.  Throws FitDivergedError when
/// the data carry no interference signal or the residual stays above
/// `residual_ceiling` (rms per data point).
CalibrationResult fit_transmissions_from_visibility_sweep(
    double g1, const std::vector<VisibilitySample>& samples, double eta_a, double eta_b,
    double residual_ceiling = 0.05);

/// Closed-form inversion valid at loss-balanced gains (g2^2 = g1^2 T_A T_B):
/// T_A = V_B / (2 - V_B), T_B = V_A / (2 - V_A).
std::pair<double, double> transmissions_at_loss_balance(double v_a, double v_b);

enum class RecommendationTag { asymptotic_singles, constrained_grid };

struct Recommendation {
    Observable observable = Observable::singles_a;
    double g2 = 0.0;
    double fi_max = 0.0; // closed-form FI at the recommended setting
    RecommendationTag tag = RecommendationTag::asymptotic_singles;
};

/// Measurement strategy for a calibrated interferometer.  Unconstrained:
/// singles on the better-detected arm with g2 = 10 g1.  With a g2 ceiling:
/// the (observable, g2) pair maximizing the closed-form FI on a grid over
/// [0, g2_max]; among ties the smallest g2 wins.
Recommendation recommend_strategy(const ValidatedConfig& cfg,
                                  std::optional<double> g2_max = std::nullopt,
                                  int grid_points = 1001);

} // namespace su11::calib
