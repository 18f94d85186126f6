#include "jumpsim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

namespace jumpsim::analysis {

const char* to_string(SweepFamily f) {
    switch (f) {
        case SweepFamily::experimental_plus_payload:
            return "experimental_plus_payload";
        case SweepFamily::body_foot: return "body_foot";
        case SweepFamily::body_knees: return "body_knees";
    }
    return "unknown";
}

const char* to_string(SweepParam p) {
    switch (p) {
        case SweepParam::body_mass_fraction: return "body_mass_fraction";
        case SweepParam::force_to_weight: return "force_to_weight";
    }
    return "unknown";
}

std::pair<double, double> SweepSpec::admissible_range() const {
    if (swept_param == SweepParam::force_to_weight)
        return {0.0, std::numeric_limits<double>::infinity()};
    if (family == SweepFamily::experimental_plus_payload) {
        const double total = base_config.masses.total() + payload;
        const double lo = base_config.masses.m1 / total;
        const double hi = (base_config.masses.m1 + payload) / total;
        return {lo, hi};
    }
    return {0.0, 1.0};
}

void SweepSpec::validate() const {
    base_config.validate();
    if (payload < 0.0)
        throw std::invalid_argument("sweep.payload must be >= 0");
    if (grid.empty()) throw std::invalid_argument("sweep.grid must be non-empty");
    const auto [lo, hi] = admissible_range();
    double prev = -std::numeric_limits<double>::infinity();
    for (double v : grid) {
        if (!(v > prev))
            throw std::invalid_argument("sweep.grid must be strictly increasing");
        if (swept_param == SweepParam::force_to_weight) {
            if (!(v > 0.0))
                throw std::invalid_argument(
                    "sweep.grid: force-to-weight values must be > 0");
        } else if (v < lo - 1e-12 || v > hi + 1e-12) {
            std::ostringstream msg;
            msg << "sweep.grid value " << v << " outside the admissible range ["
                << lo << ", " << hi << "] for family " << to_string(family);
            throw std::invalid_argument(msg.str());
        }
        prev = v;
    }
}

rhomboid::MassLayout layout_for_fraction(const SweepSpec& spec,
                                         double body_fraction) {
    rhomboid::MassLayout m;
    switch (spec.family) {
        case SweepFamily::body_foot: {
            const double total = spec.base_config.masses.total() + spec.payload;
            m.m1 = body_fraction * total;
            m.m8 = (1.0 - body_fraction) * total;
            break;
        }
        case SweepFamily::body_knees: {
            const double total = spec.base_config.masses.total() + spec.payload;
            m.m1 = body_fraction * total;
            m.m4 = m.m5 = 0.5 * (1.0 - body_fraction) * total;
            break;
        }
        case SweepFamily::experimental_plus_payload: {
            m = spec.base_config.masses;
            const double total = m.total() + spec.payload;
            const double to_body =
                std::clamp(body_fraction * total - m.m1, 0.0, spec.payload);
            m.m1 += to_body;
            m.m8 += spec.payload - to_body;
            break;
        }
    }
    return m;
}

namespace {

SweepRow evaluate_point(const SweepSpec& spec, double value,
                        const IntegratorSettings& settings) {
    rhomboid::Config cfg = spec.base_config;
    if (spec.swept_param == SweepParam::body_mass_fraction) {
        cfg.masses = layout_for_fraction(spec, value);
    } else {
        const double f_max = value * cfg.masses.total() * cfg.g;
        cfg.k_r = rhomboid::spring_stiffness_from_peak_force(
            f_max, cfg.theta_ini, cfg.theta_end, cfg.L);
    }

    SweepRow row;
    row.param = value;
    const auto sim = rhomboid::simulate(cfg, settings);
    const TakeoffReport& rep = sim.report;
    row.classification = rep.classification;
    row.efficiency = rep.efficiency;
    row.h_norm = rep.jump_height_normalized;
    if (rep.epe_initial > 0.0) {
        const EnergyLedger& l = rep.ledger_at_takeoff;
        row.frac_gpe = l.gpe / rep.epe_initial;
        row.frac_ke_y_cg = l.ke_y_cg / rep.epe_initial;
        row.frac_epe = l.epe / rep.epe_initial;
        row.frac_ke_x = l.ke_x / rep.epe_initial;
        row.frac_ke_y_rel = l.ke_y_rel / rep.epe_initial;
        row.frac_ke_rot = l.ke_rot / rep.epe_initial;
    }
    return row;
}

std::vector<SweepRow> run_points(const SweepSpec& spec,
                                 const IntegratorSettings& settings, int jobs) {
    std::vector<SweepRow> rows(spec.grid.size());
    const int workers = std::max(
        1, std::min<int>(jobs, static_cast<int>(spec.grid.size())));
    if (workers == 1) {
        for (std::size_t i = 0; i < spec.grid.size(); ++i)
            rows[i] = evaluate_point(spec, spec.grid[i], settings);
        return rows;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            for (std::size_t i = w; i < spec.grid.size(); i += workers)
                rows[i] = evaluate_point(spec, spec.grid[i], settings);
        });
    }
    for (auto& th : pool) th.join();
    return rows;
}

}  // namespace

std::vector<SweepRow> sweep(const SweepSpec& spec,
                            const IntegratorSettings& settings, int jobs) {
    spec.validate();
    return run_points(spec, settings, jobs);
}

Bounds bounds(double alpha) {
    if (!(alpha > 0.0))
        throw std::invalid_argument("bounds: alpha must be > 0");
    return {alpha, 0.5 * (alpha - 1.0)};
}

std::vector<SweepRow> force_to_weight_sweep(const rhomboid::Config& base,
                                            const std::vector<double>& alphas,
                                            const IntegratorSettings& settings,
                                            int jobs) {
    SweepSpec spec;
    spec.family = SweepFamily::experimental_plus_payload;
    spec.swept_param = SweepParam::force_to_weight;
    spec.grid = alphas;
    spec.base_config = base;
    spec.payload = 0.0;
    spec.validate();
    return run_points(spec, settings, jobs);
}

void RobotRecord::validate() const {
    if (name.empty()) throw std::invalid_argument("robot record: name missing");
    if (!(total_mass > 0.0))
        throw std::invalid_argument("robot '" + name + "': total_mass_kg missing");
    if (!(char_length > 0.0))
        throw std::invalid_argument("robot '" + name + "': char_length_m missing");
    if (!stored_energy && !peak_force)
        throw std::invalid_argument("robot '" + name +
                                    "': needs stored_energy_J or peak_force_N");
    if (stored_energy && *stored_energy < 0.0)
        throw std::invalid_argument("robot '" + name + "': stored_energy_J < 0");
    if (peak_force && *peak_force < 0.0)
        throw std::invalid_argument("robot '" + name + "': peak_force_N < 0");
    if (takeoff_velocity && *takeoff_velocity < 0.0)
        throw std::invalid_argument("robot '" + name + "': takeoff_velocity_mps < 0");
}

double peak_force_estimate(const RobotRecord& record) {
    if (record.peak_force) return *record.peak_force;
    if (record.stored_energy) {
        if (!(record.char_length > 0.0))
            throw std::invalid_argument("peak_force_estimate: char_length missing");
        return 2.0 * *record.stored_energy / record.char_length;
    }
    throw std::invalid_argument(
        "peak_force_estimate: neither stored_energy nor peak_force available");
}

InertialessPrediction inertialess_prediction(const RobotRecord& record,
                                             double g) {
    if (!record.stored_energy || !record.takeoff_velocity)
        throw std::invalid_argument(
            "inertialess_prediction: needs stored_energy and takeoff_velocity");
    if (!(record.total_mass > 0.0) || !(record.char_length > 0.0) || !(g > 0.0))
        throw std::invalid_argument("inertialess_prediction: invalid record");
    InertialessPrediction out;
    const double v = *record.takeoff_velocity;
    const double d = record.char_length;
    out.h_norm_measured = v * v / (2.0 * g * d);
    const double h_full =
        *record.stored_energy / (record.total_mass * g) - d;
    out.h_norm_inertialess = std::max(h_full / d, out.h_norm_measured);
    return out;
}

namespace {

std::optional<double> parse_field(const std::string& field,
                                  const std::string& name, int line_no) {
    if (field.empty()) return std::nullopt;
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(field, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != field.size()) {
        std::ostringstream msg;
        msg << "line " << line_no << ": field '" << name
            << "' is not a number: '" << field << "'";
        throw std::invalid_argument(msg.str());
    }
    return v;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

std::vector<RobotCsvRow> load_robots_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open robot CSV: " + path);
    const std::string expected_header =
        "name,total_mass_kg,char_length_m,stored_energy_J,peak_force_N,"
        "takeoff_velocity_mps";

    std::vector<RobotCsvRow> rows;
    std::string line;
    int line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            std::string stripped = line;
            if (!stripped.empty() && stripped.back() == '\r') stripped.pop_back();
            if (stripped != expected_header)
                throw std::invalid_argument(
                    "robot CSV: unexpected header on line " +
                    std::to_string(line_no) + " (expected '" + expected_header +
                    "')");
            header_seen = true;
            continue;
        }
        const auto fields = split_csv_line(line);
        RobotCsvRow row;
        try {
            if (fields.size() != 6)
                throw std::invalid_argument(
                    "line " + std::to_string(line_no) + ": expected 6 fields, got " +
                    std::to_string(fields.size()));
            row.record.name = fields[0];
            if (auto v = parse_field(fields[1], "total_mass_kg", line_no))
                row.record.total_mass = *v;
            if (auto v = parse_field(fields[2], "char_length_m", line_no))
                row.record.char_length = *v;
            row.record.stored_energy = parse_field(fields[3], "stored_energy_J", line_no);
            row.record.peak_force = parse_field(fields[4], "peak_force_N", line_no);
            row.record.takeoff_velocity =
                parse_field(fields[5], "takeoff_velocity_mps", line_no);
            row.record.validate();
        } catch (const std::invalid_argument& err) {
            row.warning = err.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace jumpsim::analysis
