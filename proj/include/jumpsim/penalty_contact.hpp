#pragma once

#include "jumpsim/core.hpp"
#include "jumpsim/integrator.hpp"
#include "jumpsim/rhomboid.hpp"

// Independent cross-check of the event-based rhomboid simulation: instead of
// pinning the foot and imposing F_R = 0 as an event, the foot rests on a very
// stiff one-sided linear spring and take-off is when the contact force
// reaches zero. Integrated with the fixed-step RK4 verifier.

namespace jumpsim::penalty {

/// Contact force of the one-sided ground spring at foot height y_foot
/// (compression only, no tensile ground force, no damping).
double contact_force(double y_foot, double contact_stiffness);

struct Result {
    TakeoffReport report;
    double contact_force_initial = 0.0;  // at the static rest penetration
    double t_takeoff = 0.0;
};

/// Simulates the release with the foot on the penalty spring. The state is
/// (theta, thetadot, y_foot, ydot_foot); the two accelerations come from the
/// coupled 2x2 generalized mass matrix solved per step.
Result simulate(const rhomboid::Config& cfg,
                const IntegratorSettings& settings = {},
                double tol_rel = kClassifyTolDefault);

}  // namespace jumpsim::penalty
