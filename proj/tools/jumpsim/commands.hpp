#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "run_config.hpp"

// Command implementations behind the CLI front end, kept free of argv
// plumbing so the test suite can drive them directly.
//
// Exit codes: 0 success, 1 error, 2 simulation completed without take-off.

namespace jumpsim::cli {

struct IntegratorOverrides {
    std::optional<double> rel_tol;
    std::optional<double> abs_tol;
    std::optional<double> max_step;
    std::optional<double> fixed_step;
    std::optional<double> contact_stiffness;

    void apply(IntegratorSettings& settings) const;
};

/// Parses a sweep grid given as "start:stop:count" or "v1,v2,...".
std::vector<double> parse_grid(const std::string& text);

int cmd_simulate(const std::string& config_path, const IntegratorOverrides& ov,
                 const std::string& traj_path, const std::string& report_path,
                 bool dump_config, std::ostream& out, std::ostream& err);

int cmd_sweep(const std::string& config_path, const IntegratorOverrides& ov,
              const std::string& family, const std::string& param,
              const std::string& grid, double payload, int jobs,
              const std::string& out_path, std::ostream& out,
              std::ostream& err);

int cmd_bounds(const std::string& grid, const std::string& out_path,
               std::ostream& out, std::ostream& err);

int cmd_compare(const std::string& robots_path, const std::string& out_path,
                std::ostream& out, std::ostream& err);

int cmd_verify(const IntegratorOverrides& ov, std::ostream& out,
               std::ostream& err);

}  // namespace jumpsim::cli
