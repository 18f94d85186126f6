#include <CLI11.hpp>

#include <iostream>

#include "commands.hpp"

// jumpsim: take-off dynamics and energy-conversion analysis of spring-driven
// jumpers. See README.md for the config format and output schemas.

int main(int argc, char** argv) {
    using namespace jumpsim::cli;

    CLI::App app{"Spring-driven jumper take-off simulation and analysis"};
    app.require_subcommand(1);

    IntegratorOverrides overrides;
    double rel_tol = 0, abs_tol = 0, max_step = 0, fixed_step = 0, contact = 0;
    auto add_integrator_flags = [&](CLI::App* cmd) {
        cmd->add_option("--rel-tol", rel_tol, "adaptive relative tolerance")
            ->each([&](const std::string&) { overrides.rel_tol = rel_tol; });
        cmd->add_option("--abs-tol", abs_tol, "adaptive absolute tolerance")
            ->each([&](const std::string&) { overrides.abs_tol = abs_tol; });
        cmd->add_option("--max-step", max_step, "adaptive max step [s]")
            ->each([&](const std::string&) { overrides.max_step = max_step; });
        cmd->add_option("--fixed-step", fixed_step, "fixed-step size [s]")
            ->each([&](const std::string&) { overrides.fixed_step = fixed_step; });
        cmd->add_option("--contact-stiffness", contact,
                        "penalty ground stiffness [N/m]")
            ->each([&](const std::string&) { overrides.contact_stiffness = contact; });
    };

    // simulate
    auto* sim = app.add_subcommand("simulate", "run one model to take-off");
    std::string config_path, traj_path, report_path;
    bool dump_config = false;
    sim->add_option("--config", config_path, "TOML config file")->required();
    sim->add_option("--traj", traj_path, "trajectory CSV path (default stdout)");
    sim->add_option("--report", report_path, "report JSON path (default stdout)");
    sim->add_flag("--dump-config", dump_config,
                  "print the resolved config and exit");
    add_integrator_flags(sim);

    // sweep
    auto* sweep = app.add_subcommand("sweep", "design-space sweep (rhomboid)");
    std::string sweep_config, family = "experimental_plus_payload";
    std::string param = "body_mass_fraction", grid, sweep_out;
    double payload = 0.2;
    int jobs = 1;
    sweep->add_option("--config", sweep_config, "TOML config file")->required();
    sweep->add_option("--family", family,
                      "experimental_plus_payload | body_foot | body_knees");
    sweep->add_option("--param", param,
                      "body_mass_fraction | force_to_weight");
    sweep->add_option("--grid", grid, "start:stop:count or v1,v2,...")
        ->required();
    sweep->add_option("--payload", payload,
                      "extra payload mass [kg] (experimental_plus_payload)");
    sweep->add_option("--jobs", jobs, "worker threads (deterministic output)");
    sweep->add_option("--out", sweep_out, "output CSV path (default stdout)");
    add_integrator_flags(sweep);

    // bounds
    auto* bounds = app.add_subcommand(
        "bounds", "theoretical normalised jump-height bounds");
    std::string bounds_grid, bounds_out;
    bounds->add_option("--alphas", bounds_grid,
                       "force-to-weight grid, start:stop:count or list")
        ->required();
    bounds->add_option("--out", bounds_out, "output CSV path (default stdout)");

    // compare
    auto* compare = app.add_subcommand(
        "compare", "measured vs inertialess jump heights for robot records");
    std::string robots_path, compare_out;
    compare->add_option("--robots", robots_path, "robot records CSV")
        ->required();
    compare->add_option("--out", compare_out, "output CSV path (default stdout)");

    // verify
    auto* verify = app.add_subcommand(
        "verify", "run the cross-model verification battery");
    add_integrator_flags(verify);

    CLI11_PARSE(app, argc, argv);

    if (sim->parsed())
        return cmd_simulate(config_path, overrides, traj_path, report_path,
                            dump_config, std::cout, std::cerr);
    if (sweep->parsed())
        return cmd_sweep(sweep_config, overrides, family, param, grid, payload,
                         jobs, sweep_out, std::cout, std::cerr);
    if (bounds->parsed())
        return cmd_bounds(bounds_grid, bounds_out, std::cout, std::cerr);
    if (compare->parsed())
        return cmd_compare(robots_path, compare_out, std::cout, std::cerr);
    if (verify->parsed()) return cmd_verify(overrides, std::cout, std::cerr);
    return 1;
}
