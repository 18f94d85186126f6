#pragma once

#include <functional>
#include <string>
#include <vector>

#include "jumpsim/baton.hpp"
#include "jumpsim/integrator.hpp"
#include "jumpsim/prismatic.hpp"
#include "jumpsim/rhomboid.hpp"

// Cross-model verification battery: every check pits one computation route
// against an independent one and reports the measured residual against a
// fixed threshold. Used by the `verify` CLI command and the test suites.

namespace jumpsim::verify {

struct CheckResult {
    std::string name;
    double residual = 0.0;
    double threshold = 0.0;
    bool pass = false;
    std::string detail;
};

/// Prismatic closed form vs adaptive integration of the equation of motion;
/// residual is the max deviation relative to the trajectory amplitudes.
CheckResult prismatic_closed_form_vs_ode(const prismatic::Config& cfg,
                                         const IntegratorSettings& settings);

/// Knee angular acceleration vs a first-principles route: generalized inertia
/// and potential assembled by direct summation over the eight components and
/// differentiated numerically, with no use of the collapsed coefficients.
/// `accel` is the implementation under test (normally knee_angular_acceleration).
CheckResult lagrangian_oracle(
    const rhomboid::Config& cfg,
    const std::function<double(const rhomboid::Config&, double, double)>& accel,
    int n_states = 100, unsigned seed = 20816);

/// First-principles knee acceleration at one state (exposed for tests).
double lagrangian_fd_acceleration(const rhomboid::Config& cfg, double theta,
                                  double thetadot);

/// Event-based take-off vs the penalty-contact simulation.
CheckResult event_vs_penalty(const rhomboid::Config& cfg,
                             const IntegratorSettings& settings);

/// Adaptive vs fixed-step take-off scalars on the pinned-foot model.
CheckResult adaptive_vs_fixed(const rhomboid::Config& cfg,
                              const IntegratorSettings& settings);

/// Energy-conservation drift along the simulated trajectories of the
/// rhomboid and baton models.
CheckResult energy_conservation_rhomboid(const rhomboid::Config& cfg,
                                         const IntegratorSettings& settings);
CheckResult energy_conservation_baton(const baton::Config& cfg,
                                      const IntegratorSettings& settings);

/// CG-velocity identity: direct mass-weighted summation vs the aggregate
/// shortcut, at randomized states (machine precision).
CheckResult cg_velocity_identity(const rhomboid::Config& cfg,
                                 int n_states = 100, unsigned seed = 3111);

/// Ground-reaction identity: sum of m_i (g + yddot_i) vs m_T (g + yddot_cg),
/// at randomized states (machine precision).
CheckResult ground_reaction_identity(const rhomboid::Config& cfg,
                                     int n_states = 100, unsigned seed = 977);

/// Take-off balance: |F_R| at the detected take-off below its event
/// tolerance and the CG acceleration equal to -g.
CheckResult takeoff_balance(const rhomboid::Config& cfg,
                            const IntegratorSettings& settings);

/// The full battery on the bundled reference configuration.
std::vector<CheckResult> run_all(const IntegratorSettings& settings = {});

}  // namespace jumpsim::verify
