#include "jumpsim/rhomboid.hpp"

#include <cmath>

namespace jumpsim::rhomboid {

namespace {

// Height and horizontal-offset coefficients of the 8 component centres:
// y_i = a_i L sin(theta/2), x_i = b_i L cos(theta/2), order m1..m8.
constexpr std::array<double, 8> kHeightCoef = {2.0, 1.5, 1.5, 1.0,
                                               1.0, 0.5, 0.5, 0.0};
constexpr std::array<double, 8> kOffsetCoef = {0.0, 0.5, -0.5, 1.0,
                                               -1.0, 0.5, -0.5, 0.0};
// Thin uniform beams: segments are components 1, 2, 5, 6 (m2, m3, m6, m7).
constexpr std::array<bool, 8> kIsSegment = {false, true, true, false,
                                            false, true, true, false};

double generalized_inertia(const MassAggregates& agg, double L, double theta) {
    const double s = std::sin(theta / 2.0);
    const double c = std::cos(theta / 2.0);
    return L * L / 16.0 * (agg.agg_a * s * s + agg.agg_b * c * c) +
           L * L / 48.0 * agg.agg_c;
}

double drive_torque(const Config& cfg, const MassAggregates& agg, double theta,
                    double thetadot) {
    return 2.0 * cfg.k_r * (cfg.theta_ini - theta) -
           cfg.L * cfg.L * thetadot * thetadot / 64.0 * std::sin(theta) *
               (agg.agg_a - agg.agg_b) -
           agg.agg_d * cfg.L * cfg.g / 4.0 * std::cos(theta / 2.0);
}

}  // namespace

void MassLayout::validate() const {
    const auto m = as_array();
    static const char* names[8] = {"m1", "m2", "m3", "m4", "m5", "m6", "m7", "m8"};
    for (int i = 0; i < 8; ++i) {
        if (m[i] < 0.0 || !std::isfinite(m[i]))
            throw std::invalid_argument(std::string("masses.") + names[i] +
                                        " must be >= 0 and finite");
    }
    if (!(total() > 0.0))
        throw std::invalid_argument("masses: total mass must be > 0");
}

MassAggregates compute_aggregates(const MassLayout& m) {
    MassAggregates agg;
    const double legs = m.m2 + m.m3 + m.m6 + m.m7;
    const double knees = m.m4 + m.m5;
    agg.agg_a = legs + 4.0 * knees;
    agg.agg_b = 16.0 * m.m1 + 9.0 * (m.m2 + m.m3) + 4.0 * knees + (m.m6 + m.m7);
    agg.agg_c = legs;
    agg.agg_d = 4.0 * m.m1 + 3.0 * (m.m2 + m.m3) + 2.0 * knees + (m.m6 + m.m7);
    return agg;
}

void Config::validate() const {
    masses.validate();
    if (!(L > 0.0)) throw std::invalid_argument("model.L must be > 0");
    if (!(k_r > 0.0)) throw std::invalid_argument("spring.k_r must be > 0");
    if (!(theta_ini > 0.0) || !(theta_ini < M_PI))
        throw std::invalid_argument("spring.theta_ini must be in (0, pi)");
    if (!(theta_end > 0.0) || !(theta_end < theta_ini))
        throw std::invalid_argument("spring.theta_end must be in (0, theta_ini)");
    if (g < 0.0) throw std::invalid_argument("model.g must be >= 0");
}

double spring_stiffness_from_peak_force(double f_max, double theta_ini,
                                        double theta_end, double L) {
    if (!(theta_end < theta_ini))
        throw std::invalid_argument(
            "spring_stiffness_from_peak_force: theta_end must be < theta_ini");
    if (!(f_max > 0.0) || !(theta_end > 0.0) || !(L > 0.0))
        throw std::invalid_argument(
            "spring_stiffness_from_peak_force: arguments must be positive");
    return f_max * L * std::cos(theta_end / 2.0) /
           (2.0 * (theta_ini - theta_end));
}

double peak_force_from_stiffness(double k_r, double theta_ini, double theta_end,
                                 double L) {
    if (!(theta_end < theta_ini))
        throw std::invalid_argument(
            "peak_force_from_stiffness: theta_end must be < theta_ini");
    return 2.0 * k_r * (theta_ini - theta_end) / (L * std::cos(theta_end / 2.0));
}

ComponentKinematics joint_kinematics(double L, double theta, double thetadot,
                                     double thetaddot) {
    ComponentKinematics kin;
    const double s = std::sin(theta / 2.0);
    const double c = std::cos(theta / 2.0);
    const double u = thetadot / 2.0;
    // d/dt sin(theta/2) = u c, d/dt cos(theta/2) = -u s
    const double s_dd = thetaddot / 2.0 * c - u * u * s;
    const double c_dd = -thetaddot / 2.0 * s - u * u * c;
    for (int i = 0; i < 8; ++i) {
        const double a = kHeightCoef[i] * L;
        const double b = kOffsetCoef[i] * L;
        kin.position[i] = {b * c, a * s};
        kin.velocity[i] = {-b * u * s, a * u * c};
        kin.acceleration[i] = {b * c_dd, a * s_dd};
    }
    kin.segment_rate = u;
    return kin;
}

double knee_angular_acceleration(const Config& cfg, double theta,
                                 double thetadot) {
    const MassAggregates agg = compute_aggregates(cfg.masses);
    const double inertia = generalized_inertia(agg, cfg.L, theta);
    if (!(inertia > 0.0))
        throw std::invalid_argument(
            "knee_angular_acceleration: non-positive generalized inertia");
    return drive_torque(cfg, agg, theta, thetadot) / inertia;
}

double cg_velocity(const Config& cfg, double theta, double thetadot) {
    const MassAggregates agg = compute_aggregates(cfg.masses);
    const double ydot_body = cfg.L * thetadot * std::cos(theta / 2.0);
    return agg.agg_d / (4.0 * cfg.masses.total()) * ydot_body;
}

double cg_acceleration(const Config& cfg, double theta, double thetadot) {
    const MassAggregates agg = compute_aggregates(cfg.masses);
    const double thetaddot = knee_angular_acceleration(cfg, theta, thetadot);
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    return agg.agg_d * cfg.L / (4.0 * cfg.masses.total()) *
           (thetaddot * c - thetadot * thetadot / 2.0 * s);
}

double ground_reaction(const Config& cfg, double theta, double thetadot) {
    const double m_t = cfg.masses.total();
    return m_t * (cfg.g + cg_acceleration(cfg, theta, thetadot));
}

EnergyLedger energy_ledger(const Config& cfg, double theta, double thetadot) {
    const auto m = cfg.masses.as_array();
    const double m_t = cfg.masses.total();
    const ComponentKinematics kin = joint_kinematics(cfg.L, theta, thetadot, 0.0);

    double ydot_cg = 0.0;
    for (int i = 0; i < 8; ++i) ydot_cg += m[i] * kin.velocity[i].y();
    ydot_cg /= m_t;

    double ke_x = 0.0, ke_y_rel = 0.0, ke_rot = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double vx = kin.velocity[i].x();
        const double vy_rel = kin.velocity[i].y() - ydot_cg;
        ke_x += 0.5 * m[i] * vx * vx;
        ke_y_rel += 0.5 * m[i] * vy_rel * vy_rel;
        if (kIsSegment[i]) {
            const double inertia = m[i] * cfg.L * cfg.L / 12.0;
            ke_rot += 0.5 * inertia * kin.segment_rate * kin.segment_rate;
        }
    }
    const double ke_y_cg = 0.5 * m_t * ydot_cg * ydot_cg;

    const double s = std::sin(theta / 2.0);
    const double s_end = std::sin(cfg.theta_end / 2.0);
    double gpe = 0.0;
    for (int i = 0; i < 8; ++i)
        gpe += m[i] * cfg.g * kHeightCoef[i] * cfg.L * (s - s_end);

    const double dtheta = cfg.theta_ini - theta;
    const double epe = cfg.k_r * dtheta * dtheta;
    return EnergyLedger::make(ke_x, ke_y_cg, ke_y_rel, ke_rot, gpe, epe);
}

SimulationResult simulate(const Config& cfg, const IntegratorSettings& settings,
                          double tol_rel) {
    cfg.validate();
    SimulationResult result;
    TakeoffReport& report = result.report;
    report.epe_initial = cfg.epe_initial();

    const MassAggregates agg = compute_aggregates(cfg.masses);
    const double m_t = cfg.masses.total();

    // Degenerate layout: every moving component is massless (all mass at the
    // static foot). Nothing for the spring to do work on.
    if (!(agg.agg_d > 0.0) ||
        !(generalized_inertia(agg, cfg.L, cfg.theta_end) > 0.0)) {
        report.classification = TakeoffClass::no_takeoff;
        report.diagnostic = "no moving mass: the centre of mass sits at the foot";
        report.state_at_takeoff = SimState{0.0, cfg.theta_end, 0.0};
        report.ledger_at_takeoff = energy_ledger(cfg, cfg.theta_end, 0.0);
        return result;
    }

    if (!(drive_torque(cfg, agg, cfg.theta_end, 0.0) > 0.0)) {
        report.classification = TakeoffClass::no_takeoff;
        report.diagnostic = "initial net torque non-positive: gravity holds the "
                            "charged posture";
        report.state_at_takeoff = SimState{0.0, cfg.theta_end, 0.0};
        report.ledger_at_takeoff = energy_ledger(cfg, cfg.theta_end, 0.0);
        return result;
    }

    using Vec = StateVec<2>;
    const DerivFn<2> rhs = [&cfg](double, const Vec& y) {
        return Vec{y[1], knee_angular_acceleration(cfg, y[0], y[1])};
    };

    std::vector<OdeEvent<2>> events;
    events.push_back({"takeoff",
                      [&cfg](double, const Vec& y) {
                          return ground_reaction(cfg, y[0], y[1]);
                      },
                      -1, 1e-9 * m_t * std::max(cfg.g, 1.0)});
    events.push_back(
        {"stall", [](double, const Vec& y) { return y[1]; }, -1, 0.0});
    events.push_back(
        {"clamp", [](double, const Vec& y) { return y[0] - kThetaClamp; }, +1,
         0.0});

    // Time scale of the release; every run ends on an event well within it.
    const double t_max =
        200.0 * std::sqrt(generalized_inertia(agg, cfg.L, cfg.theta_end) /
                          (2.0 * cfg.k_r));
    const auto sol = integrate_adaptive<2>(rhs, 0.0, Vec{cfg.theta_end, 0.0},
                                           t_max, events, settings);

    result.trajectory.reserve(sol.t.size());
    for (std::size_t i = 0; i < sol.t.size(); ++i) {
        Sample smp;
        const double th = sol.y[i][0];
        const double thd = sol.y[i][1];
        smp.state = SimState{sol.t[i], th, thd};
        smp.ledger = energy_ledger(cfg, th, thd);
        smp.ground_reaction = ground_reaction(cfg, th, thd);
        smp.y_cg = agg.agg_d * cfg.L / (2.0 * m_t) * std::sin(th / 2.0);
        smp.ydot_cg = cg_velocity(cfg, th, thd);
        result.trajectory.push_back(smp);
    }

    const double theta_final = sol.y.back()[0];
    const double thetadot_final = sol.y.back()[1];
    report.state_at_takeoff =
        SimState{sol.t.back(), theta_final, thetadot_final};
    report.ledger_at_takeoff = energy_ledger(cfg, theta_final, thetadot_final);

    const bool took_off = sol.event && events[*sol.event].name == "takeoff";
    const bool clamped = sol.event && events[*sol.event].name == "clamp";
    if (!took_off && !clamped) {
        report.classification = TakeoffClass::no_takeoff;
        report.diagnostic = "knee rate returned to zero with positive ground "
                            "reaction";
        return result;
    }
    if (clamped)
        report.diagnostic = "reached the extension clamp before the ground "
                            "reaction vanished; reported as delayed at the clamp";

    report.classification = clamped ? TakeoffClass::delayed
                                    : classify_takeoff(theta_final,
                                                       cfg.theta_ini, tol_rel);
    report.v_cg_to = cg_velocity(cfg, theta_final, thetadot_final);
    report.efficiency = efficiency(report.ledger_at_takeoff, report.epe_initial);
    if (cfg.g > 0.0) {
        const JumpHeight jh = jump_height(std::max(report.v_cg_to, 0.0), cfg.g,
                                          cfg.characteristic_length());
        report.jump_height = jh.h;
        report.jump_height_normalized = jh.h_norm;
    }
    return result;
}

}  // namespace jumpsim::rhomboid
