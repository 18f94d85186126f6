#pragma once

#include <optional>

#include "jumpsim/core.hpp"

// Prismatic jumper: a sprung body mass over an unsprung foot mass, driven by
// a massless translational linear spring. The acceleration phase has a
// closed-form solution, so everything here is algebraic.

namespace jumpsim::prismatic {

struct Config {
    double m_body = 0.0;  // kg, sprung mass
    double m_foot = 0.0;  // kg, unsprung mass at the ground interface
    double k = 0.0;       // N m^-1
    double d = 0.0;       // m, natural spring length = characteristic length
    double g = kGravityDefault;

    double total_mass() const { return m_body + m_foot; }
    double body_mass_fraction() const { return m_body / total_mass(); }

    /// Throws std::invalid_argument on a non-physical configuration.
    void validate() const;
};

/// Builds a config with the stiffness derived from the force-to-weight ratio
/// alpha = F_max/(m_T g) through the charged-state balance k d = F_max + m_B g.
Config config_from_alpha(double m_body, double m_foot, double d, double alpha,
                         double g = kGravityDefault);

struct Kinematics {
    double y = 0.0;      // m, body displacement above the charged posture
    double ydot = 0.0;   // m s^-1
    double yddot = 0.0;  // m s^-2
};

/// Closed-form body trajectory at time t in [0, takeoff_time].
Kinematics trajectory(const Config& cfg, double t);

/// Spring restoring force minus body weight, divided by the body mass; the
/// same right-hand side the closed form solves (kept for the ODE oracle).
double body_acceleration(const Config& cfg, double y);

/// Ground reaction force on the foot at body displacement y.
double ground_reaction(const Config& cfg, double y);

/// Body displacement at take-off: y_to = d + m_F g / k.
double takeoff_displacement(const Config& cfg);

/// Time of the first ground-reaction zero, from the principal arccos branch.
/// Empty when the spring cannot unload the foot (no take-off).
std::optional<double> takeoff_time(const Config& cfg);

/// Energy ledger at body state (y, ydot). The foot is at rest while grounded.
EnergyLedger energy_ledger(const Config& cfg, double y, double ydot);

/// Full take-off summary. A spring too weak to unload the foot yields a
/// no_takeoff classification rather than an error.
TakeoffReport takeoff_report(const Config& cfg,
                             double tol_rel = kClassifyTolDefault);

}  // namespace jumpsim::prismatic
