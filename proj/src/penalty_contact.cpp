#include "jumpsim/penalty_contact.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace jumpsim::penalty {

double contact_force(double y_foot, double contact_stiffness) {
    return y_foot < 0.0 ? -contact_stiffness * y_foot : 0.0;
}

namespace {

// Generalized coordinates q = (theta, y_foot). The kinetic energy is
//   T = 1/2 D(theta) thetadot^2 + (agg_d L/4) cos(theta/2) ydot_f thetadot
//       + 1/2 m_T ydot_f^2
// with D the pinned-foot generalized inertia, so the mass matrix is
//   M = [ D               agg_d L c / 4 ]
//       [ agg_d L c / 4   m_T           ]
// and the right-hand sides are the pinned-foot drive torque and the vertical
// force balance of the system as a whole.
struct PenaltyDynamics {
    const rhomboid::Config& cfg;
    rhomboid::MassAggregates agg;
    double m_t;
    double k_c;

    PenaltyDynamics(const rhomboid::Config& c, double contact_stiffness)
        : cfg(c), agg(rhomboid::compute_aggregates(c.masses)),
          m_t(c.masses.total()), k_c(contact_stiffness) {}

    StateVec<4> rhs(const StateVec<4>& y) const {
        const double theta = y[0], thetadot = y[1], y_f = y[2];
        const double s = std::sin(theta / 2.0), c = std::cos(theta / 2.0);
        const double coupling = agg.agg_d * cfg.L * c / 4.0;

        Eigen::Matrix2d mass;
        mass << cfg.L * cfg.L / 16.0 * (agg.agg_a * s * s + agg.agg_b * c * c) +
                    cfg.L * cfg.L / 48.0 * agg.agg_c,
            coupling, coupling, m_t;

        Eigen::Vector2d force;
        force[0] = 2.0 * cfg.k_r * (cfg.theta_ini - theta) -
                   cfg.L * cfg.L * thetadot * thetadot / 64.0 *
                       std::sin(theta) * (agg.agg_a - agg.agg_b) -
                   agg.agg_d * cfg.L * cfg.g / 4.0 * c;
        force[1] = -m_t * cfg.g + contact_force(y_f, k_c) +
                   agg.agg_d * cfg.L / 8.0 * thetadot * thetadot * s;

        const Eigen::Vector2d acc = mass.ldlt().solve(force);
        return StateVec<4>{thetadot, acc[0], y[3], acc[1]};
    }

    StateVec<4> rk4_step(const StateVec<4>& y, double h) const {
        const StateVec<4> k1 = rhs(y);
        const StateVec<4> k2 = rhs(y + h / 2 * k1);
        const StateVec<4> k3 = rhs(y + h / 2 * k2);
        const StateVec<4> k4 = rhs(y + h * k3);
        return y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    }
};

}  // namespace

Result simulate(const rhomboid::Config& cfg, const IntegratorSettings& settings,
                double tol_rel) {
    cfg.validate();
    settings.validate();
    const PenaltyDynamics dyn(cfg, settings.contact_stiffness);
    const double m_t = cfg.masses.total();

    Result result;
    TakeoffReport& report = result.report;
    report.epe_initial = cfg.epe_initial();

    if (!(dyn.agg.agg_d > 0.0)) {
        report.classification = TakeoffClass::no_takeoff;
        report.diagnostic = "no moving mass: the centre of mass sits at the foot";
        return result;
    }

    // Static rest: the whole weight compresses the ground spring.
    const double y_f0 = -m_t * cfg.g / settings.contact_stiffness;
    result.contact_force_initial =
        contact_force(y_f0, settings.contact_stiffness);

    // The undamped contact chatters: the step change in linkage reaction at
    // release excites the stiff contact mode, so the foot can graze free of
    // the ground several times before it finally departs. Take-off is the
    // last detachment, identified as the y_foot = 0 upward crossing after
    // which the foot climbs to the clearance height without re-entering.
    const double y_clear = 1e-3;  // m, far above any chatter hop
    const double h = settings.fixed_step;
    const double t_max = 5.0;

    StateVec<4> y{cfg.theta_end, 0.0, y_f0, 0.0};
    double t = 0.0;
    bool have_crossing = false;
    double t_cross = 0.0;
    StateVec<4> y_cross = StateVec<4>::Zero();
    std::string end_reason;

    while (t < t_max) {
        const StateVec<4> y1 = dyn.rk4_step(y, h);
        if (!y1.allFinite())
            throw DomainExitError("penalty.simulate: non-finite state at t=" +
                                  std::to_string(t));
        if (y[2] < 0.0 && y1[2] >= 0.0) {
            double lo = 0.0, hi = h;
            while (hi - lo > kEventTimeFloor) {
                const double mid = 0.5 * (lo + hi);
                if (dyn.rk4_step(y, mid)[2] < 0.0)
                    lo = mid;
                else
                    hi = mid;
            }
            t_cross = t + hi;
            y_cross = dyn.rk4_step(y, hi);
            have_crossing = true;
        }
        t += h;
        y = y1;
        if (y[2] > y_clear) {
            end_reason = "clearance";
            break;
        }
        // The contact chatter couples small oscillations into the knee rate,
        // so a stalled release is detected by the knee folding measurably
        // below the charged angle, not by the rate sign.
        if (y[0] < cfg.theta_end - 1e-2) {
            end_reason = "collapse";
            break;
        }
        if (y[0] > rhomboid::kThetaClamp) {
            end_reason = "clamp";
            break;
        }
    }

    if (end_reason != "clearance" || !have_crossing) {
        report.classification = TakeoffClass::no_takeoff;
        report.diagnostic =
            "contact force never released the foot (" +
            (end_reason.empty() ? std::string("horizon") : end_reason) + ")";
        report.state_at_takeoff = SimState{t, y[0], y[1]};
        report.ledger_at_takeoff = energy_ledger(cfg, y[0], y[1]);
        return result;
    }

    const double theta = y_cross[0];
    const double thetadot = y_cross[1];
    const double ydot_f = y_cross[3];
    result.t_takeoff = t_cross;
    report.state_at_takeoff = SimState{t_cross, theta, thetadot};
    report.classification = classify_takeoff(theta, cfg.theta_ini, tol_rel);
    // Full CG velocity includes the (tiny) foot recoil through the contact.
    report.v_cg_to = ydot_f + dyn.agg.agg_d * cfg.L / (4.0 * m_t) * thetadot *
                                  std::cos(theta / 2.0);

    const EnergyLedger shape = energy_ledger(cfg, theta, thetadot);
    // Re-assemble the vertical split with the foot translation added in.
    const auto masses = cfg.masses.as_array();
    const auto kin = rhomboid::joint_kinematics(cfg.L, theta, thetadot, 0.0);
    double ke_y_rel = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double vy = kin.velocity[i].y() + ydot_f;
        const double r = vy - report.v_cg_to;
        ke_y_rel += 0.5 * masses[i] * r * r;
    }
    const double ke_y_cg = 0.5 * m_t * report.v_cg_to * report.v_cg_to;
    report.ledger_at_takeoff = EnergyLedger::make(
        shape.ke_x, ke_y_cg, ke_y_rel, shape.ke_rot, shape.gpe, shape.epe);

    report.efficiency = efficiency(report.ledger_at_takeoff, report.epe_initial);
    if (cfg.g > 0.0) {
        const JumpHeight jh = jump_height(std::max(report.v_cg_to, 0.0), cfg.g,
                                          cfg.characteristic_length());
        report.jump_height = jh.h;
        report.jump_height_normalized = jh.h_norm;
    }
    return result;
}

}  // namespace jumpsim::penalty
