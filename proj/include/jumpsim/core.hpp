#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

// Shared domain types and conventions for the spring-driven jumper models.
// All quantities are SI internally; angles are radians. Degrees are accepted
// only at the config boundary and converted once on ingestion.

namespace jumpsim {

inline constexpr double kGravityDefault = 9.81;      // m s^-2
inline constexpr double kClassifyTolDefault = 0.01;  // relative

inline constexpr double deg2rad(double deg) { return deg * M_PI / 180.0; }
inline constexpr double rad2deg(double rad) { return rad * 180.0 / M_PI; }

enum class SpringKind { rotational, translational };

/// Hookean spring parameters. `natural` is the natural angle [rad] for a
/// rotational spring and the natural length [m] for a translational one.
struct SpringSpec {
    SpringKind kind = SpringKind::rotational;
    double stiffness = 0.0;  // N m rad^-1 (rotational) or N m^-1 (translational)
    double natural = 0.0;    // rad or m

    /// Throws std::invalid_argument on a non-physical spring.
    void validate() const;
};

/// Generalized coordinate sample: q is theta [rad] for the rotational models
/// and y [m] for the prismatic one.
struct SimState {
    double t = 0.0;
    double q = 0.0;
    double qdot = 0.0;
};

enum class TakeoffClass { premature, idealised, delayed, no_takeoff };

const char* to_string(TakeoffClass c);

/// Instantaneous decomposition of the system energy. `total` is the sum of
/// the six components; construct through make() so the identity holds exactly.
struct EnergyLedger {
    double ke_x = 0.0;      // horizontal kinetic energy [J]
    double ke_y_cg = 0.0;   // vertical kinetic energy of the centre of mass [J]
    double ke_y_rel = 0.0;  // vertical kinetic energy relative to the CG [J]
    double ke_rot = 0.0;    // rotational kinetic energy of the segments [J]
    double gpe = 0.0;       // gravitational PE, datum at the charged posture [J]
    double epe = 0.0;       // elastic PE remaining in the spring [J]
    double total = 0.0;

    static EnergyLedger make(double ke_x, double ke_y_cg, double ke_y_rel,
                             double ke_rot, double gpe, double epe) {
        EnergyLedger l{ke_x, ke_y_cg, ke_y_rel, ke_rot, gpe, epe, 0.0};
        l.total = ke_x + ke_y_cg + ke_y_rel + ke_rot + gpe + epe;
        return l;
    }
};

/// Ballistic apex of the centre of mass above its take-off position, plus the
/// same height normalised by the characteristic length d.
struct JumpHeight {
    double h = 0.0;       // m
    double h_norm = 0.0;  // h / d
};

JumpHeight jump_height(double v_cg_to, double g, double d);

/// Take-off summary shared by all three models.
struct TakeoffReport {
    SimState state_at_takeoff;
    TakeoffClass classification = TakeoffClass::no_takeoff;
    double v_cg_to = 0.0;  // vertical CG velocity at take-off [m s^-1]
    EnergyLedger ledger_at_takeoff;
    double efficiency = 0.0;  // ke_y_cg at take-off / initial EPE
    double jump_height = 0.0;
    double jump_height_normalized = 0.0;
    double epe_initial = 0.0;
    std::string diagnostic;  // non-empty when the run ended on a guard
};

/// Classifies a take-off from the spring state (angle or length) relative to
/// its natural value, within a relative tolerance band.
TakeoffClass classify_takeoff(double spring_state_at_takeoff, double natural,
                              double tol_rel = kClassifyTolDefault);

/// Elastic-kinetic conversion efficiency: vertical CG kinetic energy at
/// take-off over the initially stored elastic energy.
double efficiency(const EnergyLedger& ledger_at_takeoff, double epe_initial);

}  // namespace jumpsim
