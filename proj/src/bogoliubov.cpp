#include "su11/bogoliubov.hpp"

#include <cmath>

namespace su11::bogoliubov {

namespace {

const cdouble kI{0.0, 1.0};

} // namespace

StageMatrices stage_matrices(const ValidatedConfig& cfg) {
    const auto& c = cfg.get();
    const double c1 = std::cosh(c.g1), s1 = std::sinh(c.g1);
    const double c2 = std::cosh(c.g2), s2 = std::sinh(c.g2);
    const double alpha_a = 1.0 - c.t_a, alpha_b = 1.0 - c.t_b;

    StageMatrices m{CMatrix::identity(6), CMatrix::identity(6), CMatrix::identity(6),
                    CMatrix::identity(6), CMatrix::identity(6)};

    m.pdc1(mode_a, mode_a) = c1;
    m.pdc1(mode_a, mode_b_dag) = s1;
    m.pdc1(mode_b_dag, mode_a) = s1;
    m.pdc1(mode_b_dag, mode_b_dag) = c1;

    m.pdc2(mode_a, mode_a) = c2;
    m.pdc2(mode_a, mode_b_dag) = std::exp(-kI * c.theta) * s2;
    m.pdc2(mode_b_dag, mode_a) = std::exp(kI * c.theta) * s2;
    m.pdc2(mode_b_dag, mode_b_dag) = c2;

    m.phase(mode_a, mode_a) = std::exp(kI * c.phi);

    m.loss(mode_l_a, mode_l_a) = std::sqrt(1.0 - alpha_a);
    m.loss(mode_l_a, mode_a) = std::sqrt(alpha_a);
    m.loss(mode_a, mode_l_a) = -std::sqrt(alpha_a);
    m.loss(mode_a, mode_a) = std::sqrt(1.0 - alpha_a);
    m.loss(mode_b_dag, mode_b_dag) = std::sqrt(1.0 - alpha_b);
    m.loss(mode_b_dag, mode_l_b_dag) = -std::sqrt(alpha_b);
    m.loss(mode_l_b_dag, mode_b_dag) = std::sqrt(alpha_b);
    m.loss(mode_l_b_dag, mode_l_b_dag) = std::sqrt(1.0 - alpha_b);

    m.detection(mode_d_a, mode_d_a) = std::sqrt(c.eta_a);
    m.detection(mode_d_a, mode_a) = std::sqrt(1.0 - c.eta_a);
    m.detection(mode_a, mode_d_a) = -std::sqrt(1.0 - c.eta_a);
    m.detection(mode_a, mode_a) = std::sqrt(c.eta_a);
    m.detection(mode_b_dag, mode_b_dag) = std::sqrt(c.eta_b);
    m.detection(mode_b_dag, mode_d_b_dag) = -std::sqrt(1.0 - c.eta_b);
    m.detection(mode_d_b_dag, mode_b_dag) = std::sqrt(1.0 - c.eta_b);
    m.detection(mode_d_b_dag, mode_d_b_dag) = std::sqrt(c.eta_b);

    return m;
}

CMatrix compose(const ValidatedConfig& cfg) {
    const StageMatrices m = stage_matrices(cfg);
    // left-to-right in the stated order, no reassociation
    CMatrix t = m.detection * m.pdc2;
    t = t * m.loss;
    t = t * m.phase;
    t = t * m.pdc1;
    return t;
}

double pseudo_unitarity_deviation(const CMatrix& transfer) {
    const double sig[6] = {1.0, 1.0, 1.0, -1.0, -1.0, -1.0};
    double worst = 0.0;
    for (std::size_t i = 0; i < 6; ++i) {
        for (std::size_t j = 0; j < 6; ++j) {
            cdouble s = 0.0;
            for (std::size_t l = 0; l < 6; ++l) {
                s += transfer(i, l) * sig[l] * std::conj(transfer(j, l));
            }
            const cdouble expected = (i == j) ? cdouble{sig[i], 0.0} : cdouble{0.0, 0.0};
            worst = std::max(worst, std::abs(s - expected));
        }
    }
    return worst;
}

MomentSet moments(const ValidatedConfig& cfg) {
    const CMatrix t = compose(cfg);

    // Output mode a_out lives in row `mode_a`, output mode b_out^dag in row
    // `mode_b_dag`.  Columns 0..2 multiply annihilation operators, columns
    // 3..5 creation operators; vacuum expectation values pick out:
    //   <n_a>  = sum_{j>=3} |T[a,j]|^2
    //   <n_b>  = sum_{j<3}  |T[b^dag,j]|^2
    //   <n_a n_b> = <n_a><n_b> + |sum_{j<3} T[a,j] conj(T[b^dag,j])|^2
    // (the cross factor equals its j>=3 counterpart by commutator
    // preservation, which makes the correction a nonnegative square).
    double n_a = 0.0, n_b = 0.0;
    cdouble cross = 0.0;
    for (std::size_t j = 3; j < 6; ++j) n_a += std::norm(t(mode_a, j));
    for (std::size_t j = 0; j < 3; ++j) n_b += std::norm(t(mode_b_dag, j));
    for (std::size_t j = 0; j < 3; ++j) cross += t(mode_a, j) * std::conj(t(mode_b_dag, j));

    MomentSet m;
    m.n_a = n_a;
    m.n_b = n_b;
    m.n_ab = n_a * n_b + std::norm(cross);
    return m;
}

ClickProbabilities lowgain_click_probabilities(const ValidatedConfig& cfg) {
    if (cfg->theta != 0.0) {
        throw OutOfRangeError("theta", "low-gain click reading requires theta = 0");
    }
    const MomentSet m = moments(cfg);
    return {m.n_a, m.n_b, m.n_ab, EngineTag::bogoliubov_lowgain};
}

} // namespace su11::bogoliubov
