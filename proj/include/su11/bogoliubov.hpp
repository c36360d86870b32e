#pragma once

#include "su11/cmatrix.hpp"
#include "su11/config.hpp"
#include "su11/types.hpp"

// Exact all-gain moment engine.  The interferometer is a linear Bogoliubov
// network on the six modes (d_A, l_A, a, b^dag, l_B^dag, d_B^dag): two
// pair sources, the internal phase, the internal loss beam splitters and the
// detection beam splitters.  Composing the 6x6 stage matrices gives the
// input-output transfer matrix, from which the exact vacuum-input moments
// <n_a>, <n_b>, <n_a n_b> follow.  Complex arithmetic is used throughout and
// the product is evaluated strictly left to right, so results are reproducible
// bit for bit.

namespace su11::bogoliubov {

/// Mode ordering of the 6x6 matrices.  The first three slots carry
/// annihilation operators, the last three creation operators.
enum ModeIndex : std::size_t {
    mode_d_a = 0,
    mode_l_a = 1,
    mode_a = 2,
    mode_b_dag = 3,
    mode_l_b_dag = 4,
    mode_d_b_dag = 5
};

struct StageMatrices {
    CMatrix pdc1;
    CMatrix pdc2;
    CMatrix phase;
    CMatrix loss;
    CMatrix detection;
};

/// The five stage matrices with C_j = cosh g_j, S_j = sinh g_j and
/// alpha_j = 1 - T_j.
StageMatrices stage_matrices(const ValidatedConfig& cfg);

/// Composed transfer matrix T = Det * PDC2 * Loss * P * PDC1.
CMatrix compose(const ValidatedConfig& cfg);

/// max element of |T diag(1,1,1,-1,-1,-1) T^dag - diag(...)|; zero for any
/// commutator-preserving network.
double pseudo_unitarity_deviation(const CMatrix& transfer);

/// Exact vacuum-input moments read off the composed transfer matrix.
MomentSet moments(const ValidatedConfig& cfg);

/// Low-gain reading of the moments as click probabilities (they coincide
/// with the closed-form model to O(g^4)).  Requires theta = 0.
ClickProbabilities lowgain_click_probabilities(const ValidatedConfig& cfg);

} // namespace su11::bogoliubov
