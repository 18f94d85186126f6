#pragma once

#include <vector>

#include "jumpsim/core.hpp"
#include "jumpsim/integrator.hpp"

// Inverted-baton jumper: a point mass on a massless rod, hinged to the ground
// through a rotational spring. The charged posture is theta = 0 (rod flat on
// the ground plane); take-off is the first zero of the vertical ground
// reaction, which can occur before, at, or past the natural spring angle.

namespace jumpsim::baton {

struct Config {
    double m_body = 0.0;     // kg
    double d = 0.0;          // m, rod length = characteristic length
    double k_r = 0.0;        // N m rad^-1
    double theta_ini = 0.0;  // rad, natural spring angle, in (0, pi/2]
    double g = kGravityDefault;

    void validate() const;
};

/// Builds a config with k_r derived from the normalised stiffness
/// k_norm = k_r / (m_B g d).
Config config_from_k_norm(double m_body, double d, double k_norm,
                          double theta_ini, double g = kGravityDefault);

/// Rod angular acceleration at (theta, thetadot).
double angular_acceleration(const Config& cfg, double theta, double thetadot);

/// Rod tension: gravity component minus the centripetal force. The sign is
/// reported as-is, compressive vs tensile interpretation is left to the caller.
double rod_tension(const Config& cfg, double theta, double thetadot);

/// Vertical ground reaction split into its three physical contributions:
/// total = spring_term + gravity_term - centripetal_term.
struct GroundReaction {
    double spring_term = 0.0;       // (tau_k / d) cos(theta)
    double gravity_term = 0.0;      // m_B g sin^2(theta)
    double centripetal_term = 0.0;  // m_B d thetadot^2 sin(theta)
    double total = 0.0;
};

GroundReaction ground_reaction_components(const Config& cfg, double theta,
                                          double thetadot);

/// Energy ledger at (theta, thetadot); GPE datum at the charged posture.
EnergyLedger energy_ledger(const Config& cfg, double theta, double thetadot);

struct Sample {
    SimState state;
    GroundReaction reaction;
    double e_kin = 0.0;
    double e_epe = 0.0;
    double e_gpe = 0.0;
};

struct SimulationResult {
    TakeoffReport report;
    std::vector<Sample> trajectory;
};

// The rod is meaningless past vertical; integration stops just short of it.
inline constexpr double kThetaClamp = deg2rad(89.9);

/// Integrates the release from the charged posture until the ground reaction
/// vanishes. Throws std::invalid_argument when the initial net torque cannot
/// lift the rod off the charged posture.
SimulationResult simulate(const Config& cfg,
                          const IntegratorSettings& settings = {},
                          double tol_rel = kClassifyTolDefault);

}  // namespace jumpsim::baton
