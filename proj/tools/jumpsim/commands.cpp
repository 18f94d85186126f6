#include "commands.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "jumpsim/analysis.hpp"
#include "jumpsim/penalty_contact.hpp"
#include "jumpsim/verify.hpp"

namespace jumpsim::cli {

namespace {

using nlohmann::json;

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

// Writes to the named file, or to `fallback` when the path is empty.
class OutputTarget {
  public:
    OutputTarget(const std::string& path, std::ostream& fallback)
        : fallback_(fallback) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_)
                throw std::runtime_error("cannot open output file: " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }

  private:
    std::ofstream file_;
    std::ostream& fallback_;
};

json ledger_json(const EnergyLedger& l) {
    return json{{"ke_x", l.ke_x},       {"ke_y_cg", l.ke_y_cg},
                {"ke_y_rel", l.ke_y_rel}, {"ke_rot", l.ke_rot},
                {"gpe", l.gpe},         {"epe", l.epe},
                {"total", l.total}};
}

json report_json(const std::string& model, const TakeoffReport& r) {
    json j;
    j["model"] = model;
    j["status"] =
        r.classification == TakeoffClass::no_takeoff ? "no_takeoff" : "takeoff";
    j["classification"] = to_string(r.classification);
    j["state_at_takeoff"] = {
        {"t", r.state_at_takeoff.t},
        {"q", r.state_at_takeoff.q},
        {"qdot", r.state_at_takeoff.qdot},
    };
    j["v_cg_to"] = r.v_cg_to;
    j["efficiency"] = r.efficiency;
    j["jump_height"] = r.jump_height;
    j["jump_height_normalized"] = r.jump_height_normalized;
    j["epe_initial"] = r.epe_initial;
    j["ledger_at_takeoff"] = ledger_json(r.ledger_at_takeoff);
    if (!r.diagnostic.empty()) j["diagnostic"] = r.diagnostic;
    return j;
}

void write_report(const std::string& path, const json& j, std::ostream& out) {
    OutputTarget target(path, out);
    target.stream() << j.dump(2) << "\n";
}

TakeoffReport simulate_prismatic(const RunConfig& cfg,
                                 const std::string& traj_path,
                                 std::ostream& out) {
    const auto& p = cfg.prismatic;
    const TakeoffReport report = prismatic::takeoff_report(p, cfg.classify_tol);
    OutputTarget target(traj_path, out);
    std::ostream& csv = target.stream();
    csv << "t,y,ydot,yddot,F_R,ke_y_cg,ke_y_rel,gpe,epe,total\n";
    if (report.classification != TakeoffClass::no_takeoff) {
        const double t_to = report.state_at_takeoff.t;
        const int n = 500;
        for (int i = 0; i <= n; ++i) {
            const double t = t_to * i / n;
            const auto kin = prismatic::trajectory(p, t);
            const EnergyLedger led = prismatic::energy_ledger(p, kin.y, kin.ydot);
            csv << num(t) << ',' << num(kin.y) << ',' << num(kin.ydot) << ','
                << num(kin.yddot) << ',' << num(prismatic::ground_reaction(p, kin.y))
                << ',' << num(led.ke_y_cg) << ',' << num(led.ke_y_rel) << ','
                << num(led.gpe) << ',' << num(led.epe) << ',' << num(led.total)
                << '\n';
        }
    }
    return report;
}

TakeoffReport simulate_baton(const RunConfig& cfg, const std::string& traj_path,
                             std::ostream& out) {
    const auto sim =
        baton::simulate(cfg.baton, cfg.integrator, cfg.classify_tol);
    OutputTarget target(traj_path, out);
    std::ostream& csv = target.stream();
    csv << "t,theta,thetadot,F_R_spring,F_R_gravity,F_R_centripetal,F_R_total,"
           "E_kin,E_epe,E_gpe\n";
    for (const auto& s : sim.trajectory) {
        csv << num(s.state.t) << ',' << num(s.state.q) << ',' << num(s.state.qdot)
            << ',' << num(s.reaction.spring_term) << ','
            << num(s.reaction.gravity_term) << ','
            << num(s.reaction.centripetal_term) << ',' << num(s.reaction.total)
            << ',' << num(s.e_kin) << ',' << num(s.e_epe) << ',' << num(s.e_gpe)
            << '\n';
    }
    return sim.report;
}

TakeoffReport simulate_rhomboid(const RunConfig& cfg,
                                const std::string& traj_path,
                                std::ostream& out) {
    const auto sim =
        rhomboid::simulate(cfg.rhomboid, cfg.integrator, cfg.classify_tol);
    OutputTarget target(traj_path, out);
    std::ostream& csv = target.stream();
    csv << "t,theta_deg,thetadot,y_cg,ydot_cg,F_R,ke_x,ke_y_cg,ke_y_rel,ke_rot,"
           "gpe,epe,total\n";
    for (const auto& s : sim.trajectory) {
        csv << num(s.state.t) << ',' << num(rad2deg(s.state.q)) << ','
            << num(s.state.qdot) << ',' << num(s.y_cg) << ',' << num(s.ydot_cg)
            << ',' << num(s.ground_reaction) << ',' << num(s.ledger.ke_x) << ','
            << num(s.ledger.ke_y_cg) << ',' << num(s.ledger.ke_y_rel) << ','
            << num(s.ledger.ke_rot) << ',' << num(s.ledger.gpe) << ','
            << num(s.ledger.epe) << ',' << num(s.ledger.total) << '\n';
    }
    return sim.report;
}

}  // namespace

void IntegratorOverrides::apply(IntegratorSettings& settings) const {
    if (rel_tol) settings.rel_tol = *rel_tol;
    if (abs_tol) settings.abs_tol = *abs_tol;
    if (max_step) settings.max_step = *max_step;
    if (fixed_step) settings.fixed_step = *fixed_step;
    if (contact_stiffness) settings.contact_stiffness = *contact_stiffness;
    settings.validate();
}

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> grid;
    if (text.empty()) return grid;
    const auto colons = std::count(text.begin(), text.end(), ':');
    if (colons == 2) {
        double start = 0, stop = 0;
        long count = 0;
        std::size_t p1 = text.find(':');
        std::size_t p2 = text.find(':', p1 + 1);
        try {
            start = std::stod(text.substr(0, p1));
            stop = std::stod(text.substr(p1 + 1, p2 - p1 - 1));
            count = std::stol(text.substr(p2 + 1));
        } catch (const std::exception&) {
            throw std::invalid_argument("malformed grid '" + text +
                                        "' (expected start:stop:count)");
        }
        if (count < 1)
            throw std::invalid_argument("grid count must be >= 1");
        if (count == 1) {
            grid.push_back(start);
        } else {
            for (long i = 0; i < count; ++i)
                grid.push_back(start + (stop - start) * static_cast<double>(i) /
                                           static_cast<double>(count - 1));
        }
        return grid;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            grid.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw std::invalid_argument("malformed grid value '" + item + "'");
        }
    }
    return grid;
}

int cmd_simulate(const std::string& config_path, const IntegratorOverrides& ov,
                 const std::string& traj_path, const std::string& report_path,
                 bool dump_config, std::ostream& out, std::ostream& err) {
    try {
        RunConfig cfg = RunConfig::from_file(config_path);
        ov.apply(cfg.integrator);
        if (dump_config) {
            out << cfg.dump();
            return 0;
        }
        TakeoffReport report;
        std::string model = to_string(cfg.model);
        switch (cfg.model) {
            case ModelKind::prismatic:
                report = simulate_prismatic(cfg, traj_path, out);
                break;
            case ModelKind::baton:
                report = simulate_baton(cfg, traj_path, out);
                break;
            case ModelKind::rhomboid:
                report = simulate_rhomboid(cfg, traj_path, out);
                break;
        }
        write_report(report_path, report_json(model, report), out);
        return report.classification == TakeoffClass::no_takeoff ? 2 : 0;
    } catch (const std::exception& e) {
        err << "simulate: " << e.what() << "\n";
        return 1;
    }
}

int cmd_sweep(const std::string& config_path, const IntegratorOverrides& ov,
              const std::string& family, const std::string& param,
              const std::string& grid, double payload, int jobs,
              const std::string& out_path, std::ostream& out,
              std::ostream& err) {
    try {
        RunConfig cfg = RunConfig::from_file(config_path);
        ov.apply(cfg.integrator);
        if (cfg.model != ModelKind::rhomboid)
            throw std::invalid_argument("sweep requires a rhomboid config");

        analysis::SweepSpec spec;
        spec.base_config = cfg.rhomboid;
        spec.payload = payload;
        if (family == "experimental_plus_payload")
            spec.family = analysis::SweepFamily::experimental_plus_payload;
        else if (family == "body_foot")
            spec.family = analysis::SweepFamily::body_foot;
        else if (family == "body_knees")
            spec.family = analysis::SweepFamily::body_knees;
        else
            throw std::invalid_argument("unknown sweep family '" + family + "'");
        if (param == "body_mass_fraction")
            spec.swept_param = analysis::SweepParam::body_mass_fraction;
        else if (param == "force_to_weight")
            spec.swept_param = analysis::SweepParam::force_to_weight;
        else
            throw std::invalid_argument("unknown sweep param '" + param + "'");
        spec.grid = parse_grid(grid);

        const auto rows = analysis::sweep(spec, cfg.integrator, jobs);
        OutputTarget target(out_path, out);
        std::ostream& csv = target.stream();
        csv << "param,efficiency,h_norm,class,frac_gpe,frac_ke_y_cg,frac_epe,"
               "frac_ke_x,frac_ke_y_rel,frac_ke_rot\n";
        for (const auto& r : rows) {
            csv << num(r.param) << ',' << num(r.efficiency) << ','
                << num(r.h_norm) << ',' << to_string(r.classification) << ','
                << num(r.frac_gpe) << ',' << num(r.frac_ke_y_cg) << ','
                << num(r.frac_epe) << ',' << num(r.frac_ke_x) << ','
                << num(r.frac_ke_y_rel) << ',' << num(r.frac_ke_rot) << '\n';
        }
        return 0;
    } catch (const std::exception& e) {
        err << "sweep: " << e.what() << "\n";
        return 1;
    }
}

int cmd_bounds(const std::string& grid, const std::string& out_path,
               std::ostream& out, std::ostream& err) {
    try {
        const auto alphas = parse_grid(grid);
        if (alphas.empty()) throw std::invalid_argument("empty alpha grid");
        OutputTarget target(out_path, out);
        std::ostream& csv = target.stream();
        csv << "alpha,h_norm_ideal,h_norm_linear\n";
        for (double a : alphas) {
            const auto b = analysis::bounds(a);
            csv << num(a) << ',' << num(b.h_norm_ideal) << ','
                << num(b.h_norm_linear) << '\n';
        }
        return 0;
    } catch (const std::exception& e) {
        err << "bounds: " << e.what() << "\n";
        return 1;
    }
}

int cmd_compare(const std::string& robots_path, const std::string& out_path,
                std::ostream& out, std::ostream& err) {
    try {
        const auto rows = analysis::load_robots_csv(robots_path);
        OutputTarget target(out_path, out);
        std::ostream& csv = target.stream();
        csv << "name,alpha,h_norm_measured,h_norm_inertialess,bound_ideal,"
               "bound_linear,warning\n";
        for (const auto& row : rows) {
            const auto& rec = row.record;
            std::string warning = row.warning;
            std::string alpha_s, measured_s, inertialess_s, ideal_s, linear_s;
            if (warning.empty()) {
                try {
                    const double f_max = analysis::peak_force_estimate(rec);
                    const double alpha =
                        f_max / (rec.total_mass * kGravityDefault);
                    const auto b = analysis::bounds(alpha);
                    alpha_s = num(alpha);
                    ideal_s = num(b.h_norm_ideal);
                    linear_s = num(b.h_norm_linear);
                } catch (const std::exception& e) {
                    warning = e.what();
                }
                if (rec.takeoff_velocity) {
                    const double v = *rec.takeoff_velocity;
                    measured_s =
                        num(v * v / (2.0 * kGravityDefault * rec.char_length));
                } else if (warning.empty()) {
                    warning = "takeoff_velocity_mps missing";
                }
                if (rec.stored_energy && rec.takeoff_velocity) {
                    const auto pred = analysis::inertialess_prediction(rec);
                    inertialess_s = num(pred.h_norm_inertialess);
                } else if (warning.empty()) {
                    warning = "stored_energy_J missing, no inertialess prediction";
                }
            }
            // Keep the warning a single CSV cell.
            for (char& ch : warning)
                if (ch == ',') ch = ';';
            csv << rec.name << ',' << alpha_s << ',' << measured_s << ','
                << inertialess_s << ',' << ideal_s << ',' << linear_s << ','
                << warning << '\n';
        }
        return 0;
    } catch (const std::exception& e) {
        err << "compare: " << e.what() << "\n";
        return 1;
    }
}

int cmd_verify(const IntegratorOverrides& ov, std::ostream& out,
               std::ostream& err) {
    try {
        IntegratorSettings settings;
        ov.apply(settings);
        const auto results = verify::run_all(settings);
        bool all_pass = true;
        for (const auto& r : results) {
            all_pass = all_pass && r.pass;
            out << (r.pass ? "PASS" : "FAIL") << "  " << r.name
                << "  residual=" << num(r.residual)
                << " threshold=" << num(r.threshold);
            if (!r.detail.empty()) out << "  (" << r.detail << ")";
            out << "\n";
        }
        out << (all_pass ? "verify: all checks passed\n"
                         : "verify: FAILURES present\n");
        return all_pass ? 0 : 1;
    } catch (const std::exception& e) {
        err << "verify: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace jumpsim::cli
