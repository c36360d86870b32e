#pragma once

#include <string>
#include <vector>

// Cross-module property suites.  Each check draws its own deterministic
// sample set, so results are reproducible run to run; `fast` trims the sample
// counts for a sub-minute smoke run while `full` uses the quantifications the
// module contracts state.

namespace su11::validation {

enum class Level { fast, full };

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail; // first counterexample or summary statistics
};

std::vector<CheckResult> run_all(Level level);

// individual suites (grouped by module)
CheckResult check_kernel_equivalence(Level level);
CheckResult check_analytic_dominance(Level level);
CheckResult check_analytic_closed_form_vs_grid(Level level);
CheckResult check_analytic_visibility_bounds(Level level);
CheckResult check_analytic_vcc_loss_balance(Level level);
CheckResult check_analytic_blocking(Level level);
CheckResult check_analytic_ficc_knee(Level level);
CheckResult check_bogoliubov_pseudo_unitarity(Level level);
CheckResult check_bogoliubov_moments_closed_forms(Level level);
CheckResult check_bogoliubov_lowgain_vs_analytic(Level level);
CheckResult check_bogoliubov_theta_phi_shift(Level level);
CheckResult check_fock_channel_properties(Level level);
CheckResult check_fock_squeezer_mean_photon(Level level);
CheckResult check_fock_engine_agreement(Level level);
CheckResult check_fock_multiphoton_fraction(Level level);
CheckResult check_fock_moment_agreement(Level level);
CheckResult check_comparison_region_consistency(Level level);
CheckResult check_comparison_table1_thresholds(Level level);
CheckResult check_comparison_r_optimality(Level level);
CheckResult check_comparison_asymptotic_consistency(Level level);
CheckResult check_calibration_klyshko_roundtrip(Level level);
CheckResult check_calibration_loss_balanced_inversion(Level level);
CheckResult check_calibration_recommend_optimality(Level level);

} // namespace su11::validation
