#pragma once

#include <Eigen/Core>

#include <array>
#include <vector>

#include "jumpsim/core.hpp"
#include "jumpsim/integrator.hpp"

// Rhomboidal spring-linkage jumper: four equal thin segments joined by
// revolute joints (body on top, foot on the ground, two knees at the sides),
// driven by a rotational spring pair at each knee. The linkage has a single
// degree of freedom, the knee angle theta; the foot stays pinned until the
// vertical ground reaction vanishes.

namespace jumpsim::rhomboid {

/// The eight point/segment masses. m1 body joint, m2/m3 upper leg segments,
/// m4/m5 knee joints (including the springs), m6/m7 lower leg segments,
/// m8 foot joint.
struct MassLayout {
    double m1 = 0.0, m2 = 0.0, m3 = 0.0, m4 = 0.0;
    double m5 = 0.0, m6 = 0.0, m7 = 0.0, m8 = 0.0;

    double total() const { return m1 + m2 + m3 + m4 + m5 + m6 + m7 + m8; }
    double body_mass_fraction() const { return m1 / total(); }
    std::array<double, 8> as_array() const {
        return {m1, m2, m3, m4, m5, m6, m7, m8};
    }

    void validate() const;
};

/// Weighted mass sums that collapse the eight-component Lagrangian into a
/// single-coordinate equation of motion. agg_a and agg_b weight the sin^2 and
/// cos^2 halves of the configuration-dependent inertia, agg_c the segment
/// rotary inertia, and agg_d the CG/weight coefficient.
struct MassAggregates {
    double agg_a = 0.0;
    double agg_b = 0.0;
    double agg_c = 0.0;
    double agg_d = 0.0;
};

MassAggregates compute_aggregates(const MassLayout& masses);

struct Config {
    MassLayout masses;
    double L = 0.0;          // m, segment length; characteristic length d = 2L
    double k_r = 0.0;        // N m rad^-1, per-knee spring-pair stiffness
    double theta_ini = 0.0;  // rad, natural spring angle
    double theta_end = 0.0;  // rad, charged knee angle
    double g = kGravityDefault;

    double characteristic_length() const { return 2.0 * L; }
    /// Total elastic energy stored at the charged posture (both knee pairs).
    double epe_initial() const {
        const double d = theta_ini - theta_end;
        return k_r * d * d;
    }

    void validate() const;
};

/// Per-knee spring-pair stiffness from the peak spring-charging force, by the
/// quasi-static balance at the charged angle:
/// k_r = F_max L cos(theta_end/2) / (2 (theta_ini - theta_end)).
double spring_stiffness_from_peak_force(double f_max, double theta_ini,
                                        double theta_end, double L);

/// Inverse of the above: the peak charging force implied by a stiffness.
double peak_force_from_stiffness(double k_r, double theta_ini, double theta_end,
                                 double L);

/// Positions, velocities and accelerations of all 8 component centres
/// (order m1..m8) in the foot-pinned frame, plus the segment angular rate.
/// x is the horizontal signed offset, y the height above the ground plane.
struct ComponentKinematics {
    std::array<Eigen::Vector2d, 8> position;
    std::array<Eigen::Vector2d, 8> velocity;
    std::array<Eigen::Vector2d, 8> acceleration;
    double segment_rate = 0.0;  // rad s^-1, each segment turns at thetadot/2
};

ComponentKinematics joint_kinematics(double L, double theta, double thetadot,
                                     double thetaddot);

/// Knee angular acceleration from the collapsed equation of motion.
/// Throws on a non-positive generalized inertia (corrupt mass input).
double knee_angular_acceleration(const Config& cfg, double theta,
                                 double thetadot);

/// Vertical CG velocity; equals (agg_d / 4 m_T) * ydot_body.
double cg_velocity(const Config& cfg, double theta, double thetadot);

/// Vertical CG acceleration with thetaddot taken from the equation of motion.
double cg_acceleration(const Config& cfg, double theta, double thetadot);

/// Vertical ground reaction on the foot: m_T (g + yddot_cg).
double ground_reaction(const Config& cfg, double theta, double thetadot);

/// Energy ledger at (theta, thetadot); GPE datum at the charged posture,
/// EPE totalled over both knee spring pairs.
EnergyLedger energy_ledger(const Config& cfg, double theta, double thetadot);

struct Sample {
    SimState state;
    EnergyLedger ledger;
    double ground_reaction = 0.0;
    double y_cg = 0.0;
    double ydot_cg = 0.0;
};

struct SimulationResult {
    TakeoffReport report;
    std::vector<Sample> trajectory;
};

// Straight-leg singularity guard; reaching it is reported, never silent.
inline constexpr double kThetaClamp = deg2rad(179.9);

/// Integrates the release from the charged posture to the first root of the
/// ground reaction. Degenerate layouts (no moving mass) and releases whose
/// initial net torque cannot extend the knee are reported as no_takeoff.
SimulationResult simulate(const Config& cfg,
                          const IntegratorSettings& settings = {},
                          double tol_rel = kClassifyTolDefault);

}  // namespace jumpsim::rhomboid
