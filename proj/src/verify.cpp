#include "jumpsim/verify.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "jumpsim/penalty_contact.hpp"
#include "jumpsim/reference_configs.hpp"

namespace jumpsim::verify {

namespace {

CheckResult make_result(std::string name, double residual, double threshold,
                        std::string detail = {}) {
    CheckResult r;
    r.name = std::move(name);
    r.residual = residual;
    r.threshold = threshold;
    r.pass = residual < threshold;
    r.detail = std::move(detail);
    return r;
}

}  // namespace

CheckResult prismatic_closed_form_vs_ode(const prismatic::Config& cfg,
                                         const IntegratorSettings& settings) {
    cfg.validate();
    const auto t_to = prismatic::takeoff_time(cfg);
    const double t_end = t_to ? *t_to : 1.0;

    IntegratorSettings tight = settings;
    tight.rel_tol = std::min(settings.rel_tol, 1e-10);
    tight.abs_tol = std::min(settings.abs_tol, 1e-13);

    using Vec = StateVec<2>;
    const DerivFn<2> rhs = [&cfg](double, const Vec& y) {
        return Vec{y[1], prismatic::body_acceleration(cfg, y[0])};
    };
    const auto sol =
        integrate_adaptive<2>(rhs, 0.0, Vec{0.0, 0.0}, t_end, {}, tight);

    const double lift = cfg.k * cfg.d - cfg.m_body * cfg.g;
    const double y_scale = lift / cfg.k;
    const double v_scale = lift / std::sqrt(cfg.k * cfg.m_body);
    double worst = 0.0;
    for (std::size_t i = 0; i < sol.t.size(); ++i) {
        const auto kin = prismatic::trajectory(cfg, sol.t[i]);
        worst = std::max(worst, std::abs(sol.y[i][0] - kin.y) / y_scale);
        worst = std::max(worst, std::abs(sol.y[i][1] - kin.ydot) / v_scale);
    }
    return make_result("prismatic closed form vs adaptive ODE", worst, 1e-8);
}

double lagrangian_fd_acceleration(const rhomboid::Config& cfg, double theta,
                                  double thetadot) {
    // Generalized inertia by direct summation: translational terms from
    // finite-difference position sensitivities, rotary terms from the
    // finite-difference segment orientation sensitivities.
    const auto masses = cfg.masses.as_array();
    const auto segment_angle = [&cfg](double th, int seg) {
        // Segment orientations from joint positions: 0/1 upper (body->knee),
        // 2/3 lower (foot->knee), knees on either side.
        const auto kin = rhomboid::joint_kinematics(cfg.L, th, 0.0, 0.0);
        const Eigen::Vector2d body = kin.position[0];
        const Eigen::Vector2d knee_a = kin.position[3];
        const Eigen::Vector2d knee_b = kin.position[4];
        const Eigen::Vector2d foot = kin.position[7];
        Eigen::Vector2d delta;
        switch (seg) {
            case 0: delta = knee_a - body; break;
            case 1: delta = knee_b - body; break;
            case 2: delta = knee_a - foot; break;
            default: delta = knee_b - foot; break;
        }
        return std::atan2(delta.y(), delta.x());
    };

    // Fourth-order central differences at both levels; the outer derivative
    // of the inner finite-difference inertia needs the extra accuracy.
    const auto diff4 = [](const std::function<double(double)>& f, double x,
                          double h) {
        return (f(x - 2 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2 * h)) /
               (12.0 * h);
    };

    const double h_pos = 1e-4;  // rad, position-sensitivity step
    const auto inertia_at = [&](double th) {
        double m_gen = 0.0;
        for (int i = 0; i < 8; ++i) {
            const auto coord = [&](double t, int axis) {
                return rhomboid::joint_kinematics(cfg.L, t, 0.0, 0.0)
                    .position[i][axis];
            };
            const double dx =
                diff4([&](double t) { return coord(t, 0); }, th, h_pos);
            const double dy =
                diff4([&](double t) { return coord(t, 1); }, th, h_pos);
            m_gen += masses[i] * (dx * dx + dy * dy);
        }
        const int seg_mass_idx[4] = {1, 2, 5, 6};
        for (int s = 0; s < 4; ++s) {
            const double dphi = diff4(
                [&](double t) { return segment_angle(t, s); }, th, h_pos);
            const double moi = masses[seg_mass_idx[s]] * cfg.L * cfg.L / 12.0;
            m_gen += moi * dphi * dphi;
        }
        return m_gen;
    };

    const auto potential_at = [&](double th) {
        const auto kin = rhomboid::joint_kinematics(cfg.L, th, 0.0, 0.0);
        double v = 0.0;
        for (int i = 0; i < 8; ++i)
            v += masses[i] * cfg.g * kin.position[i].y();
        const double d = cfg.theta_ini - th;
        return v + cfg.k_r * d * d;
    };

    const double h = 1e-3;  // rad, outer differentiation step
    const double m_gen = inertia_at(theta);
    const double dm = diff4(inertia_at, theta, h);
    const double dv = diff4(potential_at, theta, h);
    return (-0.5 * dm * thetadot * thetadot - dv) / m_gen;
}

CheckResult lagrangian_oracle(
    const rhomboid::Config& cfg,
    const std::function<double(const rhomboid::Config&, double, double)>& accel,
    int n_states, unsigned seed) {
    cfg.validate();
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> theta_dist(cfg.theta_end + 0.05,
                                                      cfg.theta_ini - 0.05);
    std::uniform_real_distribution<double> rate_dist(0.0, 80.0);
    double worst = 0.0;
    for (int i = 0; i < n_states; ++i) {
        const double theta = theta_dist(rng);
        const double thetadot = rate_dist(rng);
        const double a_impl = accel(cfg, theta, thetadot);
        const double a_fd = lagrangian_fd_acceleration(cfg, theta, thetadot);
        const double rel =
            std::abs(a_impl - a_fd) / std::max(std::abs(a_fd), 1e-3);
        worst = std::max(worst, rel);
    }
    std::ostringstream detail;
    detail << n_states << " random states";
    return make_result("knee acceleration vs first-principles Lagrangian",
                       worst, 1e-6, detail.str());
}

CheckResult event_vs_penalty(const rhomboid::Config& cfg,
                             const IntegratorSettings& settings) {
    const auto event_sim = rhomboid::simulate(cfg, settings);
    const auto pen = penalty::simulate(cfg, settings);
    const double v_event = event_sim.report.v_cg_to;
    const double rel = std::abs(pen.report.v_cg_to - v_event) /
                       std::max(std::abs(v_event), 1e-12);
    std::ostringstream detail;
    detail << "event v_cg=" << v_event << ", penalty v_cg=" << pen.report.v_cg_to
           << ", classes " << to_string(event_sim.report.classification) << "/"
           << to_string(pen.report.classification);
    CheckResult r = make_result("event-based vs penalty-contact take-off", rel,
                                1e-2, detail.str());
    if (event_sim.report.classification != pen.report.classification)
        r.pass = false;
    return r;
}

CheckResult adaptive_vs_fixed(const rhomboid::Config& cfg,
                              const IntegratorSettings& settings) {
    const auto adaptive = rhomboid::simulate(cfg, settings);

    using Vec = StateVec<2>;
    const DerivFn<2> rhs = [&cfg](double, const Vec& y) {
        return Vec{y[1], rhomboid::knee_angular_acceleration(cfg, y[0], y[1])};
    };
    std::vector<OdeEvent<2>> events;
    events.push_back({"takeoff",
                      [&cfg](double, const Vec& y) {
                          return rhomboid::ground_reaction(cfg, y[0], y[1]);
                      },
                      -1, 1e-9 * cfg.masses.total() * std::max(cfg.g, 1.0)});
    const auto fixed = integrate_fixed<2>(rhs, 0.0, Vec{cfg.theta_end, 0.0},
                                          10.0, events, settings);
    if (!fixed.stopped_on_event())
        return make_result("adaptive vs fixed-step take-off", 1.0, 1e-3,
                           "fixed-step run found no take-off");
    const double v_fixed =
        rhomboid::cg_velocity(cfg, fixed.y_event[0], fixed.y_event[1]);
    const double v_adaptive = adaptive.report.v_cg_to;
    const double rel = std::abs(v_fixed - v_adaptive) /
                       std::max(std::abs(v_adaptive), 1e-12);
    std::ostringstream detail;
    detail << "adaptive v_cg=" << v_adaptive << ", fixed v_cg=" << v_fixed;
    return make_result("adaptive vs fixed-step take-off", rel, 1e-3,
                       detail.str());
}

CheckResult energy_conservation_rhomboid(const rhomboid::Config& cfg,
                                         const IntegratorSettings& settings) {
    const auto sim = rhomboid::simulate(cfg, settings);
    const double epe_ini = cfg.epe_initial();
    double worst = 0.0;
    for (const auto& s : sim.trajectory)
        worst = std::max(worst, std::abs(s.ledger.total - epe_ini) / epe_ini);
    return make_result("rhomboid energy conservation", worst, 1e-6);
}

CheckResult energy_conservation_baton(const baton::Config& cfg,
                                      const IntegratorSettings& settings) {
    const auto sim = baton::simulate(cfg, settings);
    const double epe_ini = 0.5 * cfg.k_r * cfg.theta_ini * cfg.theta_ini;
    double worst = 0.0;
    for (const auto& s : sim.trajectory) {
        const double total = s.e_kin + s.e_epe + s.e_gpe;
        worst = std::max(worst, std::abs(total - epe_ini) / epe_ini);
    }
    return make_result("baton energy conservation", worst, 1e-6);
}

CheckResult cg_velocity_identity(const rhomboid::Config& cfg, int n_states,
                                 unsigned seed) {
    const auto masses = cfg.masses.as_array();
    const double m_t = cfg.masses.total();
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> theta_dist(cfg.theta_end,
                                                      cfg.theta_ini);
    std::uniform_real_distribution<double> rate_dist(-50.0, 80.0);
    double worst = 0.0;
    for (int i = 0; i < n_states; ++i) {
        const double theta = theta_dist(rng);
        const double thetadot = rate_dist(rng);
        const auto kin = rhomboid::joint_kinematics(cfg.L, theta, thetadot, 0.0);
        double direct = 0.0;
        for (int c = 0; c < 8; ++c) direct += masses[c] * kin.velocity[c].y();
        direct /= m_t;
        const double shortcut = rhomboid::cg_velocity(cfg, theta, thetadot);
        const double scale = std::max(std::abs(direct), 1.0);
        worst = std::max(worst, std::abs(direct - shortcut) / scale);
    }
    return make_result("CG velocity identity (direct sum vs aggregate)", worst,
                       1e-12);
}

CheckResult ground_reaction_identity(const rhomboid::Config& cfg, int n_states,
                                     unsigned seed) {
    const auto masses = cfg.masses.as_array();
    const double m_t = cfg.masses.total();
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> theta_dist(cfg.theta_end,
                                                      cfg.theta_ini);
    std::uniform_real_distribution<double> rate_dist(-50.0, 80.0);
    double worst = 0.0;
    for (int i = 0; i < n_states; ++i) {
        const double theta = theta_dist(rng);
        const double thetadot = rate_dist(rng);
        const double thetaddot =
            rhomboid::knee_angular_acceleration(cfg, theta, thetadot);
        const auto kin =
            rhomboid::joint_kinematics(cfg.L, theta, thetadot, thetaddot);
        double direct = 0.0;
        for (int c = 0; c < 8; ++c)
            direct += masses[c] * (cfg.g + kin.acceleration[c].y());
        const double shortcut = rhomboid::ground_reaction(cfg, theta, thetadot);
        const double scale = std::max(std::abs(direct), m_t * cfg.g);
        worst = std::max(worst, std::abs(direct - shortcut) / scale);
    }
    return make_result("ground-reaction identity (component sum vs CG form)",
                       worst, 1e-12);
}

CheckResult takeoff_balance(const rhomboid::Config& cfg,
                            const IntegratorSettings& settings) {
    const auto sim = rhomboid::simulate(cfg, settings);
    if (sim.report.classification == TakeoffClass::no_takeoff)
        return make_result("take-off balance (F_R=0, CG acceleration -g)", 1.0,
                           1e-6, "no take-off detected");
    const double theta = sim.report.state_at_takeoff.q;
    const double thetadot = sim.report.state_at_takeoff.qdot;
    const double fr = rhomboid::ground_reaction(cfg, theta, thetadot);
    const double acc_cg = rhomboid::cg_acceleration(cfg, theta, thetadot);
    const double fr_rel = std::abs(fr) / (cfg.masses.total() * cfg.g);
    const double acc_rel = std::abs(acc_cg + cfg.g) / cfg.g;
    std::ostringstream detail;
    detail << "|F_R|/m_T g=" << fr_rel << ", |yddot_cg+g|/g=" << acc_rel;
    return make_result("take-off balance (F_R=0, CG acceleration -g)",
                       std::max(fr_rel, acc_rel), 1e-6, detail.str());
}

std::vector<CheckResult> run_all(const IntegratorSettings& settings) {
    std::vector<CheckResult> out;
    const auto robot = reference::experimental_robot();

    prismatic::Config pris = prismatic::config_from_alpha(0.1, 0.9, 0.3, 10.0);
    out.push_back(prismatic_closed_form_vs_ode(pris, settings));
    out.push_back(lagrangian_oracle(robot, [](const rhomboid::Config& c,
                                              double th, double thd) {
        return rhomboid::knee_angular_acceleration(c, th, thd);
    }));
    out.push_back(event_vs_penalty(robot, settings));
    out.push_back(adaptive_vs_fixed(robot, settings));
    out.push_back(energy_conservation_rhomboid(robot, settings));
    out.push_back(
        energy_conservation_baton(reference::reference_baton(5.5), settings));
    out.push_back(cg_velocity_identity(robot));
    out.push_back(ground_reaction_identity(robot));
    out.push_back(takeoff_balance(robot, settings));
    return out;
}

}  // namespace jumpsim::verify
