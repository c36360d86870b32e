#pragma once

#include <string_view>

namespace su11 {

/// Which computation path produced a set of click probabilities.
enum class EngineTag { analytic, bogoliubov_lowgain, fock };

/// Detection observable of the two-arm click measurement.
enum class Observable { singles_a, singles_b, coincidences };

constexpr std::string_view to_string(EngineTag e) {
    switch (e) {
    case EngineTag::analytic: return "analytic";
    case EngineTag::bogoliubov_lowgain: return "bogoliubov-lowgain";
    case EngineTag::fock: return "fock";
    }
    return "?";
}

constexpr std::string_view to_string(Observable o) {
    switch (o) {
    case Observable::singles_a: return "singles_A";
    case Observable::singles_b: return "singles_B";
    case Observable::coincidences: return "coincidences";
    }
    return "?";
}

/// Click probabilities for the two binary detectors and their coincidence.
struct ClickProbabilities {
    double p_a = 0.0;
    double p_b = 0.0;
    double p_cc = 0.0;
    EngineTag engine = EngineTag::analytic;

    double get(Observable o) const {
        switch (o) {
        case Observable::singles_a: return p_a;
        case Observable::singles_b: return p_b;
        case Observable::coincidences: return p_cc;
        }
        return 0.0;
    }
};

/// Fringe visibilities of the three observables.  A visibility whose defining
/// denominator vanishes (no interference term) is reported as 0 with its
/// defined flag cleared.
struct VisibilityTriple {
    double v_a = 0.0;
    double v_b = 0.0;
    double v_cc = 0.0;
    bool defined_a = true;
    bool defined_b = true;
    bool defined_cc = true;
};

/// Classical Fisher information of one observable: value at the requested
/// phase plus the maximum over phase and its argmax.
struct FisherReport {
    Observable observable = Observable::singles_a;
    double fi_at_phi = 0.0;
    double fi_max = 0.0;
    double phi_star = 0.0;
    bool defined = true;
};

/// Exact second-order photon-number moments from the Bogoliubov engine.
struct MomentSet {
    double n_a = 0.0;
    double n_b = 0.0;
    double n_ab = 0.0;
};

} // namespace su11
