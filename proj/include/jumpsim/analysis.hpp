#pragma once

#include <optional>
#include <string>
#include <vector>

#include "jumpsim/core.hpp"
#include "jumpsim/integrator.hpp"
#include "jumpsim/rhomboid.hpp"

// Design-space sweeps over the rhomboid model, theoretical jump-height
// bounds, and arithmetic over published jumping-robot records.

namespace jumpsim::analysis {

enum class SweepFamily {
    experimental_plus_payload,  // base masses kept, payload split body/foot
    body_foot,                  // massless linkage, mass only at body and foot
    body_knees,                 // massless linkage, mass only at body and knees
};

enum class SweepParam { body_mass_fraction, force_to_weight };

const char* to_string(SweepFamily f);
const char* to_string(SweepParam p);

struct SweepSpec {
    SweepFamily family = SweepFamily::experimental_plus_payload;
    SweepParam swept_param = SweepParam::body_mass_fraction;
    std::vector<double> grid;  // strictly increasing, within admissible range
    rhomboid::Config base_config;
    double payload = 0.2;  // kg, experimental_plus_payload only

    /// Admissible closed interval of the swept parameter for this spec.
    std::pair<double, double> admissible_range() const;

    void validate() const;
};

struct SweepRow {
    double param = 0.0;
    TakeoffClass classification = TakeoffClass::no_takeoff;
    double efficiency = 0.0;
    double h_norm = 0.0;
    // Ledger entries at take-off as fractions of the initial elastic energy.
    double frac_gpe = 0.0;
    double frac_ke_y_cg = 0.0;
    double frac_epe = 0.0;
    double frac_ke_x = 0.0;
    double frac_ke_y_rel = 0.0;
    double frac_ke_rot = 0.0;
};

/// Builds the mass layout for one sweep point of a body-mass-fraction family.
rhomboid::MassLayout layout_for_fraction(const SweepSpec& spec,
                                         double body_fraction);

/// Evaluates every grid point; per-point no_takeoff is recorded in the row,
/// never aborting the sweep. `jobs` > 1 evaluates points concurrently with
/// output order fixed by the grid.
std::vector<SweepRow> sweep(const SweepSpec& spec,
                            const IntegratorSettings& settings = {},
                            int jobs = 1);

/// Theoretical normalised jump-height bounds at force-to-weight ratio alpha:
/// an ideal constant-force spring reaches alpha, a linear spring (alpha-1)/2.
struct Bounds {
    double h_norm_ideal = 0.0;
    double h_norm_linear = 0.0;
};

Bounds bounds(double alpha);

/// Force-to-weight sweep at fixed masses and geometry: per alpha the spring
/// stiffness is rescaled through the peak-force map and the model rerun.
std::vector<SweepRow> force_to_weight_sweep(const rhomboid::Config& base,
                                            const std::vector<double>& alphas,
                                            const IntegratorSettings& settings = {},
                                            int jobs = 1);

/// One published jumping robot. Blank/absent optional fields stay absent.
struct RobotRecord {
    std::string name;
    double total_mass = 0.0;   // kg
    double char_length = 0.0;  // m
    std::optional<double> stored_energy;     // J
    std::optional<double> peak_force;        // N
    std::optional<double> takeoff_velocity;  // m s^-1, measured

    void validate() const;
};

/// Peak spring-charging force: the reported value when present, otherwise
/// approximated from the stored elastic energy as 2 PE / d.
double peak_force_estimate(const RobotRecord& record);

struct InertialessPrediction {
    double h_norm_measured = 0.0;
    double h_norm_inertialess = 0.0;
};

/// Measured normalised jump height from the take-off velocity, and the
/// prediction with all inertial effects removed (full conversion of the
/// stored energy minus the gravitational gain over the stroke), clamped at
/// no worse than measured.
InertialessPrediction inertialess_prediction(const RobotRecord& record,
                                             double g = kGravityDefault);

/// Parses the robot-record CSV (header:
/// name,total_mass_kg,char_length_m,stored_energy_J,peak_force_N,takeoff_velocity_mps;
/// blank fields = absent, '#' lines are comments). Rows that fail validation
/// are returned with a warning instead of aborting the load.
struct RobotCsvRow {
    RobotRecord record;
    std::string warning;  // empty when the row is usable
};

std::vector<RobotCsvRow> load_robots_csv(const std::string& path);

}  // namespace jumpsim::analysis
