#include "jumpsim/baton.hpp"

#include <cmath>

namespace jumpsim::baton {

void Config::validate() const {
    if (!(m_body > 0.0)) throw std::invalid_argument("baton.m_body must be > 0");
    if (!(d > 0.0)) throw std::invalid_argument("baton.d must be > 0");
    if (!(k_r > 0.0)) throw std::invalid_argument("baton.k_r must be > 0");
    if (!(theta_ini > 0.0) || theta_ini > M_PI / 2.0 + 1e-12)
        throw std::invalid_argument("baton.theta_ini must be in (0, pi/2]");
    if (g < 0.0) throw std::invalid_argument("baton.g must be >= 0");
}

Config config_from_k_norm(double m_body, double d, double k_norm,
                          double theta_ini, double g) {
    if (!(k_norm > 0.0))
        throw std::invalid_argument("baton.k_norm must be > 0");
    Config cfg;
    cfg.m_body = m_body;
    cfg.d = d;
    cfg.k_r = k_norm * m_body * g * d;
    cfg.theta_ini = theta_ini;
    cfg.g = g;
    cfg.validate();
    return cfg;
}

double angular_acceleration(const Config& cfg, double theta, double thetadot) {
    (void)thetadot;  // no damping, the rate does not enter
    const double tau_k = cfg.k_r * (cfg.theta_ini - theta);
    return (tau_k / cfg.d - cfg.m_body * cfg.g * std::cos(theta)) /
           (cfg.m_body * cfg.d);
}

double rod_tension(const Config& cfg, double theta, double thetadot) {
    return cfg.m_body * cfg.g * std::sin(theta) -
           cfg.m_body * cfg.d * thetadot * thetadot;
}

GroundReaction ground_reaction_components(const Config& cfg, double theta,
                                          double thetadot) {
    const double tau_k = cfg.k_r * (cfg.theta_ini - theta);
    const double s = std::sin(theta);
    GroundReaction r;
    r.spring_term = tau_k / cfg.d * std::cos(theta);
    r.gravity_term = cfg.m_body * cfg.g * s * s;
    r.centripetal_term = cfg.m_body * cfg.d * thetadot * thetadot * s;
    r.total = r.spring_term + r.gravity_term - r.centripetal_term;
    return r;
}

EnergyLedger energy_ledger(const Config& cfg, double theta, double thetadot) {
    const double v_tan = cfg.d * thetadot;
    const double xdot = -v_tan * std::sin(theta);
    const double ydot = v_tan * std::cos(theta);
    const double ke_x = 0.5 * cfg.m_body * xdot * xdot;
    // The point mass is the centre of mass: no relative or rotational terms.
    const double ke_y_cg = 0.5 * cfg.m_body * ydot * ydot;
    const double gpe = cfg.m_body * cfg.g * cfg.d * std::sin(theta);
    const double dtheta = cfg.theta_ini - theta;
    const double epe = 0.5 * cfg.k_r * dtheta * dtheta;
    return EnergyLedger::make(ke_x, ke_y_cg, 0.0, 0.0, gpe, epe);
}

SimulationResult simulate(const Config& cfg, const IntegratorSettings& settings,
                          double tol_rel) {
    cfg.validate();
    if (!(cfg.k_r * cfg.theta_ini / cfg.d > cfg.m_body * cfg.g))
        throw std::invalid_argument(
            "baton.simulate: initial net torque is non-positive, the rod cannot "
            "leave the charged posture");

    using Vec = StateVec<2>;
    const DerivFn<2> rhs = [&cfg](double, const Vec& y) {
        return Vec{y[1], angular_acceleration(cfg, y[0], y[1])};
    };

    std::vector<OdeEvent<2>> events;
    events.push_back({"takeoff",
                      [&cfg](double, const Vec& y) {
                          return ground_reaction_components(cfg, y[0], y[1]).total;
                      },
                      -1, 1e-9 * cfg.m_body * cfg.g});
    events.push_back(
        {"stall", [](double, const Vec& y) { return y[1]; }, -1, 0.0});
    events.push_back(
        {"clamp", [](double, const Vec& y) { return y[0] - kThetaClamp; }, +1,
         0.0});

    // Generous horizon; every run ends on one of the three events.
    const double t_max = 50.0 * std::sqrt(cfg.d / std::max(cfg.g, 1e-9));
    const auto sol = integrate_adaptive<2>(rhs, 0.0, Vec{0.0, 0.0}, t_max,
                                           events, settings);

    SimulationResult result;
    result.trajectory.reserve(sol.t.size());
    for (std::size_t i = 0; i < sol.t.size(); ++i) {
        Sample s;
        s.state = SimState{sol.t[i], sol.y[i][0], sol.y[i][1]};
        s.reaction = ground_reaction_components(cfg, sol.y[i][0], sol.y[i][1]);
        const EnergyLedger led = energy_ledger(cfg, sol.y[i][0], sol.y[i][1]);
        s.e_kin = led.ke_x + led.ke_y_cg;
        s.e_epe = led.epe;
        s.e_gpe = led.gpe;
        result.trajectory.push_back(s);
    }

    TakeoffReport& report = result.report;
    report.epe_initial = 0.5 * cfg.k_r * cfg.theta_ini * cfg.theta_ini;

    const bool took_off = sol.event && events[*sol.event].name == "takeoff";
    const double theta_end_state = sol.y.back()[0];
    const double thetadot_end = sol.y.back()[1];
    report.state_at_takeoff = SimState{sol.t.back(), theta_end_state, thetadot_end};
    report.ledger_at_takeoff =
        energy_ledger(cfg, theta_end_state, thetadot_end);

    if (!took_off) {
        report.classification = TakeoffClass::no_takeoff;
        report.diagnostic = sol.event && events[*sol.event].name == "clamp"
                                ? "reached the vertical clamp with positive "
                                  "ground reaction"
                                : "rod stalled with positive ground reaction";
        return result;
    }

    report.classification =
        classify_takeoff(theta_end_state, cfg.theta_ini, tol_rel);
    report.v_cg_to = cfg.d * thetadot_end * std::cos(theta_end_state);
    report.efficiency = efficiency(report.ledger_at_takeoff, report.epe_initial);
    if (cfg.g > 0.0) {
        const JumpHeight jh = jump_height(std::max(report.v_cg_to, 0.0), cfg.g, cfg.d);
        report.jump_height = jh.h;
        report.jump_height_normalized = jh.h_norm;
    }
    return result;
}

}  // namespace jumpsim::baton
