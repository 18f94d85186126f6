// Acceptance suite: every criterion below pins a target band in code and
// prints exactly one PASS/FAIL line with the measured value. Run all
// criteria (no arguments) or one (--criterion N). Exit 0 only if every
// selected criterion passes.

#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "jumpsim/analysis.hpp"
#include "jumpsim/penalty_contact.hpp"
#include "jumpsim/reference_configs.hpp"
#include "jumpsim/verify.hpp"

using namespace jumpsim;

namespace {

struct Criterion {
    int id;
    std::string name;
    std::function<bool(std::ostringstream&)> run;
};

bool in_band(double value, double lo, double hi, const char* label,
             std::ostringstream& detail) {
    const bool ok = value >= lo && value <= hi;
    detail << label << "=" << value << (ok ? " in " : " OUTSIDE ") << "[" << lo
           << ", " << hi << "] ";
    return ok;
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> out;
    for (int i = 0; i < n; ++i) out.push_back(lo + (hi - lo) * i / (n - 1));
    return out;
}

const rhomboid::Config kRobot = reference::experimental_robot();

rhomboid::SimulationResult& robot_run() {
    static rhomboid::SimulationResult sim = rhomboid::simulate(kRobot);
    return sim;
}

analysis::SweepSpec conceptual(analysis::SweepFamily family, int n) {
    analysis::SweepSpec spec;
    spec.family = family;
    spec.swept_param = analysis::SweepParam::body_mass_fraction;
    spec.grid = linspace(0.0, 1.0, n);
    spec.base_config = kRobot;
    spec.payload = 0.2;
    return spec;
}

bool crit_stored_energy(std::ostringstream& d) {
    return in_band(kRobot.epe_initial(), 4.99 * 0.99, 4.99 * 1.01,
                   "EPE_initial[J]", d);
}

bool crit_takeoff_angle(std::ostringstream& d) {
    const double deg = rad2deg(robot_run().report.state_at_takeoff.q);
    return in_band(deg, 100.0, 108.0, "theta_to[deg]", d);
}

bool crit_takeoff_velocity(std::ostringstream& d) {
    return in_band(robot_run().report.v_cg_to, 5.00 - 0.15, 5.00 + 0.15,
                   "v_cg_to[m/s]", d);
}

bool crit_energy_breakdown(std::ostringstream& d) {
    const auto& rep = robot_run().report;
    const double epe0 = rep.epe_initial;
    const auto& l = rep.ledger_at_takeoff;
    bool ok = true;
    ok &= in_band(100 * l.gpe / epe0, 6.0 - 1.5, 6.0 + 1.5, "gpe%", d);
    ok &= in_band(100 * l.ke_y_cg / epe0, 51.0 - 2.0, 51.0 + 2.0, "ke_y_cg%", d);
    ok &= in_band(100 * l.epe / epe0, 19.0 - 2.0, 19.0 + 2.0, "epe%", d);
    ok &= in_band(100 * l.ke_x / epe0, 16.0 - 2.0, 16.0 + 2.0, "ke_x%", d);
    ok &= in_band(100 * l.ke_y_rel / epe0, 8.0 - 1.5, 8.0 + 1.5, "ke_y_rel%", d);
    const double rot = 100 * l.ke_rot / epe0;
    ok &= rot < 1.0;
    d << "ke_rot%=" << rot << (rot < 1.0 ? " < 1" : " NOT < 1");
    return ok;
}

bool crit_acceleration_duration(std::ostringstream& d) {
    return in_band(robot_run().report.state_at_takeoff.t, 0.05 * 0.85,
                   0.05 * 1.15, "t_accel[s]", d);
}

bool crit_peak_acceleration(std::ostringstream& d) {
    const double m_t = kRobot.masses.total();
    double peak = 0.0;
    for (const auto& s : robot_run().trajectory)
        peak = std::max(peak, s.ground_reaction / m_t - kRobot.g);
    d << "peak yddot_cg=" << peak / kRobot.g << "g ";
    return peak > 10.0 * kRobot.g;
}

bool crit_baton_classes(std::ostringstream& d) {
    bool ok = true;
    const auto run = [](double k_norm) {
        return baton::simulate(reference::reference_baton(k_norm)).report;
    };
    const auto r45 = run(4.5);
    ok &= r45.classification == TakeoffClass::delayed;
    d << "k4.5=" << to_string(r45.classification) << " ";
    const auto r55 = run(5.5);
    const double dev = std::abs(r55.state_at_takeoff.q - deg2rad(30.0)) /
                       deg2rad(30.0);
    ok &= dev <= 0.02;
    d << "k5.5 |dtheta|/theta_ini=" << dev << " ";
    const auto r10 = run(10.0);
    ok &= r10.classification == TakeoffClass::premature;
    d << "k10=" << to_string(r10.classification);
    return ok;
}

bool crit_payload_landmark(std::ostringstream& d) {
    auto spec = conceptual(analysis::SweepFamily::experimental_plus_payload, 0);
    const auto [lo, hi] = spec.admissible_range();
    spec.grid = linspace(lo, hi, 11);
    const auto rows = analysis::sweep(spec, {});
    const auto& top = rows.back();
    bool ok = true;
    ok &= in_band(top.param, 0.78 - 0.03, 0.78 + 0.03, "body_fraction", d);
    ok &= in_band(top.efficiency, 0.60 - 0.05, 0.60 + 0.05, "efficiency", d);
    ok &= in_band(top.h_norm, 2.4 - 0.15, 2.4 + 0.15, "h_norm", d);
    return ok;
}

bool crit_all_mass_at_body(std::ostringstream& d) {
    auto cfg = kRobot;
    cfg.masses = {};
    cfg.masses.m1 = kRobot.masses.total() + 0.2;
    const auto rep = rhomboid::simulate(cfg).report;
    return in_band(rep.efficiency, 0.80 - 0.03, 0.80 + 0.03, "efficiency", d);
}

bool crit_force_to_weight(std::ostringstream& d) {
    bool ok = true;
    const auto plateau =
        analysis::force_to_weight_sweep(kRobot, {1000.0}, {});
    ok &= in_band(plateau[0].efficiency, 0.58 - 0.03, 0.58 + 0.03,
                  "plateau_eff", d);
    auto to_body = kRobot;
    to_body.masses.m1 += to_body.masses.m4 + to_body.masses.m5;
    to_body.masses.m4 = to_body.masses.m5 = 0.0;
    const double alpha_exp =
        rhomboid::peak_force_from_stiffness(kRobot.k_r, kRobot.theta_ini,
                                            kRobot.theta_end, kRobot.L) /
        (kRobot.masses.total() * kRobot.g);
    const auto lifted = analysis::force_to_weight_sweep(to_body, {alpha_exp}, {});
    ok &= in_band(lifted[0].efficiency, 0.75 - 0.04, 0.75 + 0.04,
                  "knee_to_body_eff", d);
    return ok;
}

bool crit_oracles(std::ostringstream& d) {
    bool ok = true;
    const auto pris = verify::prismatic_closed_form_vs_ode(
        prismatic::config_from_alpha(0.1, 0.9, 0.3, 10.0), {});
    ok &= pris.pass;
    d << "closed-form/ODE=" << pris.residual << " ";
    const auto lagr = verify::lagrangian_oracle(
        kRobot, [](const rhomboid::Config& c, double th, double thd) {
            return rhomboid::knee_angular_acceleration(c, th, thd);
        });
    ok &= lagr.pass;
    d << "lagrangian=" << lagr.residual << " ";
    const auto pen = verify::event_vs_penalty(kRobot, {});
    ok &= pen.pass;
    d << "penalty=" << pen.residual << " ";
    const auto fixed = verify::adaptive_vs_fixed(kRobot, {});
    ok &= fixed.pass;
    d << "fixed-step=" << fixed.residual << " ";
    const auto energy_r = verify::energy_conservation_rhomboid(kRobot, {});
    const auto energy_b =
        verify::energy_conservation_baton(reference::reference_baton(5.5), {});
    ok &= energy_r.pass && energy_b.pass;
    d << "energy_drift=" << std::max(energy_r.residual, energy_b.residual);
    return ok;
}

bool crit_bounds(std::ostringstream& d) {
    bool ok = true;
    for (double alpha : linspace(1.0, 200.0, 40)) {
        const auto b = analysis::bounds(alpha);
        ok &= b.h_norm_ideal == alpha;
        ok &= b.h_norm_linear == 0.5 * (alpha - 1.0);
    }
    d << (ok ? "bound identities exact " : "bound identities BROKEN ");

    // Every simulated normalised jump height at or below the ideal bound.
    const double alpha_exp =
        rhomboid::peak_force_from_stiffness(kRobot.k_r, kRobot.theta_ini,
                                            kRobot.theta_end, kRobot.L) /
        (kRobot.masses.total() * kRobot.g);
    const double h_norm = robot_run().report.jump_height_normalized;
    ok &= h_norm <= alpha_exp;
    d << "robot h_norm=" << h_norm << " <= alpha=" << alpha_exp << " ";
    for (double alpha : {2.0, 5.0, 20.0, 80.0}) {
        const auto rows = analysis::force_to_weight_sweep(kRobot, {alpha}, {});
        ok &= rows[0].h_norm <= alpha;
    }
    const auto knees = analysis::sweep(
        conceptual(analysis::SweepFamily::body_knees, 5), {});
    const double alpha_heavy =
        rhomboid::peak_force_from_stiffness(kRobot.k_r, kRobot.theta_ini,
                                            kRobot.theta_end, kRobot.L) /
        ((kRobot.masses.total() + 0.2) * kRobot.g);
    for (const auto& row : knees) ok &= row.h_norm <= alpha_heavy;
    d << (ok ? "(sweeps under the bound)" : "(a sweep point EXCEEDS the bound)");
    return ok;
}

bool crit_monotonicity(std::ostringstream& d) {
    bool ok = true;
    for (auto family : {analysis::SweepFamily::body_foot,
                        analysis::SweepFamily::body_knees}) {
        const auto rows = analysis::sweep(conceptual(family, 21), {});
        for (std::size_t i = 0; i + 1 < rows.size(); ++i)
            ok &= rows[i + 1].efficiency >= rows[i].efficiency - 1e-12;
    }
    d << (ok ? "efficiency monotone on both 21-point families " : "family monotonicity BROKEN ");
    double prev_theta = 1e9, prev_rate = -1.0;
    for (double k_norm : {4.5, 5.5, 7.0, 10.0}) {
        const auto rep =
            baton::simulate(reference::reference_baton(k_norm)).report;
        ok &= rep.state_at_takeoff.q <= prev_theta;
        ok &= rep.state_at_takeoff.qdot > prev_rate;
        prev_theta = rep.state_at_takeoff.q;
        prev_rate = rep.state_at_takeoff.qdot;
    }
    d << (ok ? "baton trends hold" : "baton trends BROKEN");
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<Criterion> criteria = {
        {1, "stored energy 4.99 J +- 1%", crit_stored_energy},
        {2, "take-off knee angle in [100, 108] deg", crit_takeoff_angle},
        {3, "take-off CG velocity 5.00 +- 0.15 m/s", crit_takeoff_velocity},
        {4, "take-off energy breakdown percentages", crit_energy_breakdown},
        {5, "acceleration phase 0.05 s +- 15%", crit_acceleration_duration},
        {6, "peak CG acceleration above 10g", crit_peak_acceleration},
        {7, "baton classes at k_norm 4.5 / 5.5 / 10", crit_baton_classes},
        {8, "payload sweep landmark at 78% body fraction", crit_payload_landmark},
        {9, "all mass at the body reaches efficiency 0.80 +- 0.03",
         crit_all_mass_at_body},
        {10, "force-to-weight plateau 0.58 +- 0.03 and knee-to-body 0.75 +- 0.04",
         crit_force_to_weight},
        {11, "oracle equivalences (closed-form, Lagrangian, penalty, fixed, energy)",
         crit_oracles},
        {12, "bound identities and h_norm <= alpha", crit_bounds},
        {13, "monotonicity of sweeps and baton trends", crit_monotonicity},
    };

    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc)
            only = std::atoi(argv[++i]);
    }

    bool all_pass = true;
    for (const auto& c : criteria) {
        if (only != 0 && c.id != only) continue;
        std::ostringstream detail;
        bool pass = false;
        try {
            pass = c.run(detail);
        } catch (const std::exception& e) {
            detail << "exception: " << e.what();
        }
        all_pass &= pass;
        std::printf("%s  criterion %2d: %s  [%s]\n", pass ? "PASS" : "FAIL",
                    c.id, c.name.c_str(), detail.str().c_str());
    }
    return all_pass ? 0 : 1;
}
