#include "jumpsim/prismatic.hpp"

#include <cmath>

namespace jumpsim::prismatic {

void Config::validate() const {
    if (!(m_body > 0.0)) throw std::invalid_argument("prismatic.m_body must be > 0");
    if (m_foot < 0.0) throw std::invalid_argument("prismatic.m_foot must be >= 0");
    if (!(k > 0.0)) throw std::invalid_argument("prismatic.k must be > 0");
    if (!(d > 0.0)) throw std::invalid_argument("prismatic.d must be > 0");
    if (g < 0.0) throw std::invalid_argument("prismatic.g must be >= 0");
}

Config config_from_alpha(double m_body, double m_foot, double d, double alpha,
                         double g) {
    if (!(alpha > 0.0))
        throw std::invalid_argument("prismatic.alpha must be > 0");
    Config cfg;
    cfg.m_body = m_body;
    cfg.m_foot = m_foot;
    cfg.d = d;
    cfg.g = g;
    const double f_max = alpha * (m_body + m_foot) * g;
    cfg.k = (f_max + m_body * g) / d;
    cfg.validate();
    return cfg;
}

double body_acceleration(const Config& cfg, double y) {
    return (cfg.k * (cfg.d - y) - cfg.m_body * cfg.g) / cfg.m_body;
}

double ground_reaction(const Config& cfg, double y) {
    return cfg.k * (cfg.d - y) + cfg.m_foot * cfg.g;
}

Kinematics trajectory(const Config& cfg, double t) {
    cfg.validate();
    if (t < 0.0) throw std::invalid_argument("prismatic.trajectory: t must be >= 0");
    const double lift = cfg.k * cfg.d - cfg.m_body * cfg.g;
    if (!(lift > 0.0))
        throw std::invalid_argument(
            "prismatic.trajectory: k*d <= m_body*g, the spring cannot lift the body");
    const double omega = std::sqrt(cfg.k / cfg.m_body);
    Kinematics kin;
    kin.y = (lift / cfg.k) * (1.0 - std::cos(omega * t));
    kin.ydot = (lift / std::sqrt(cfg.k * cfg.m_body)) * std::sin(omega * t);
    kin.yddot = (lift / cfg.m_body) * std::cos(omega * t);
    return kin;
}

double takeoff_displacement(const Config& cfg) {
    cfg.validate();
    return cfg.d + cfg.m_foot * cfg.g / cfg.k;
}

std::optional<double> takeoff_time(const Config& cfg) {
    cfg.validate();
    const double lift = cfg.k * cfg.d - cfg.m_body * cfg.g;
    if (!(lift > 0.0)) return std::nullopt;
    // cos(omega t_to) = -m_T g / (k d - m_B g); out of [-1, 1] means the
    // oscillation never reaches the unloading displacement.
    const double c = -cfg.total_mass() * cfg.g / lift;
    if (c < -1.0) return std::nullopt;
    const double omega = std::sqrt(cfg.k / cfg.m_body);
    return std::acos(c) / omega;
}

EnergyLedger energy_ledger(const Config& cfg, double y, double ydot) {
    const double m_t = cfg.total_mass();
    const double ydot_cg = cfg.m_body / m_t * ydot;
    const double ke_y_cg = 0.5 * m_t * ydot_cg * ydot_cg;
    // Body and the resting foot, both relative to the CG.
    const double ke_y_rel = 0.5 * cfg.m_body * (ydot - ydot_cg) * (ydot - ydot_cg) +
                            0.5 * cfg.m_foot * ydot_cg * ydot_cg;
    const double gpe = cfg.m_body * cfg.g * y;
    const double stretch = cfg.d - y;
    const double epe = 0.5 * cfg.k * stretch * stretch;
    return EnergyLedger::make(0.0, ke_y_cg, ke_y_rel, 0.0, gpe, epe);
}

TakeoffReport takeoff_report(const Config& cfg, double tol_rel) {
    cfg.validate();
    TakeoffReport report;
    report.epe_initial = 0.5 * cfg.k * cfg.d * cfg.d;

    const auto t_to = takeoff_time(cfg);
    if (!t_to) {
        report.classification = TakeoffClass::no_takeoff;
        report.diagnostic = "spring too weak to unload the foot";
        report.ledger_at_takeoff = energy_ledger(cfg, 0.0, 0.0);
        return report;
    }

    const double y_to = takeoff_displacement(cfg);
    const Kinematics kin = trajectory(cfg, *t_to);
    const double m_t = cfg.total_mass();

    report.state_at_takeoff = SimState{*t_to, kin.y, kin.ydot};
    report.classification = classify_takeoff(y_to, cfg.d, tol_rel);
    report.v_cg_to = cfg.m_body / m_t * kin.ydot;
    report.ledger_at_takeoff = energy_ledger(cfg, kin.y, kin.ydot);
    report.efficiency = efficiency(report.ledger_at_takeoff, report.epe_initial);
    if (cfg.g > 0.0) {
        const JumpHeight jh = jump_height(report.v_cg_to, cfg.g, cfg.d);
        report.jump_height = jh.h;
        report.jump_height_normalized = jh.h_norm;
    }
    return report;
}

}  // namespace jumpsim::prismatic
