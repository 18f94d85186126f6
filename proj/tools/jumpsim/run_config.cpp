#include "run_config.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace jumpsim::cli {

namespace {

// Angle keys accept either `<key>` in radians or `<key>_deg` in degrees.
double angle(const TomlTable& t, const std::string& section,
             const std::string& key) {
    const auto rad = t.number_opt(section, key);
    const auto deg = t.number_opt(section, key + "_deg");
    if (rad && deg)
        throw TomlError("give only one of '" + section + "." + key + "' and '" +
                        section + "." + key + "_deg'");
    if (rad) return *rad;
    if (deg) return deg2rad(*deg);
    throw TomlError("missing required key '" + section + "." + key + "' (or '" +
                    key + "_deg')");
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

const char* to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::prismatic: return "prismatic";
        case ModelKind::baton: return "baton";
        case ModelKind::rhomboid: return "rhomboid";
    }
    return "unknown";
}

RunConfig RunConfig::from_table(const TomlTable& table) {
    RunConfig cfg;
    const std::string kind = table.string("model", "kind");
    if (kind == "prismatic")
        cfg.model = ModelKind::prismatic;
    else if (kind == "baton")
        cfg.model = ModelKind::baton;
    else if (kind == "rhomboid")
        cfg.model = ModelKind::rhomboid;
    else
        throw TomlError("model.kind must be one of prismatic/baton/rhomboid, "
                        "got '" + kind + "'");

    const double g = table.number_opt("model", "g").value_or(kGravityDefault);
    if (auto tol = table.number_opt("model", "classify_tol"))
        cfg.classify_tol = *tol;

    switch (cfg.model) {
        case ModelKind::prismatic: {
            auto& p = cfg.prismatic;
            p.m_body = table.number("masses", "m_body");
            p.m_foot = table.number_opt("masses", "m_foot").value_or(0.0);
            p.d = table.number("spring", "d");
            p.g = g;
            const auto k = table.number_opt("spring", "k");
            const auto alpha = table.number_opt("spring", "alpha");
            if (k && alpha)
                throw TomlError("give only one of 'spring.k' and 'spring.alpha'");
            if (k) {
                p.k = *k;
            } else if (alpha) {
                p = prismatic::config_from_alpha(p.m_body, p.m_foot, p.d, *alpha, g);
            } else {
                throw TomlError("missing 'spring.k' (or 'spring.alpha')");
            }
            p.validate();
            break;
        }
        case ModelKind::baton: {
            auto& b = cfg.baton;
            b.m_body = table.number("masses", "m_body");
            b.d = table.number("model", "d");
            b.theta_ini = angle(table, "spring", "theta_ini");
            b.g = g;
            const auto k_r = table.number_opt("spring", "k_r");
            const auto k_norm = table.number_opt("spring", "k_norm");
            if (k_r && k_norm)
                throw TomlError(
                    "give only one of 'spring.k_r' and 'spring.k_norm'");
            if (k_r)
                b.k_r = *k_r;
            else if (k_norm)
                b.k_r = *k_norm * b.m_body * g * b.d;
            else
                throw TomlError("missing 'spring.k_r' (or 'spring.k_norm')");
            b.validate();
            break;
        }
        case ModelKind::rhomboid: {
            auto& r = cfg.rhomboid;
            r.masses.m1 = table.number("masses", "m1");
            r.masses.m2 = table.number("masses", "m2");
            r.masses.m3 = table.number("masses", "m3");
            r.masses.m4 = table.number("masses", "m4");
            r.masses.m5 = table.number("masses", "m5");
            r.masses.m6 = table.number("masses", "m6");
            r.masses.m7 = table.number("masses", "m7");
            r.masses.m8 = table.number("masses", "m8");
            r.L = table.number("model", "L");
            r.theta_ini = angle(table, "spring", "theta_ini");
            r.theta_end = angle(table, "spring", "theta_end");
            r.g = g;
            const auto k_r = table.number_opt("spring", "k_r");
            const auto alpha = table.number_opt("spring", "alpha");
            if (k_r && alpha)
                throw TomlError(
                    "give only one of 'spring.k_r' and 'spring.alpha'");
            if (k_r)
                r.k_r = *k_r;
            else if (alpha)
                r.k_r = rhomboid::spring_stiffness_from_peak_force(
                    *alpha * r.masses.total() * g, r.theta_ini, r.theta_end, r.L);
            else
                throw TomlError("missing 'spring.k_r' (or 'spring.alpha')");
            r.validate();
            break;
        }
    }

    if (table.has_section("integrator")) {
        auto& s = cfg.integrator;
        if (auto v = table.number_opt("integrator", "rel_tol")) s.rel_tol = *v;
        if (auto v = table.number_opt("integrator", "abs_tol")) s.abs_tol = *v;
        if (auto v = table.number_opt("integrator", "max_step")) s.max_step = *v;
        if (auto v = table.number_opt("integrator", "fixed_step"))
            s.fixed_step = *v;
        if (auto v = table.number_opt("integrator", "contact_stiffness"))
            s.contact_stiffness = *v;
        s.validate();
    }

    table.reject_unknown_keys();
    return cfg;
}

RunConfig RunConfig::from_file(const std::string& path) {
    return from_table(TomlTable::parse_file(path));
}

std::string RunConfig::dump() const {
    std::ostringstream out;
    out << "[model]\n";
    out << "kind = \"" << to_string(model) << "\"\n";
    switch (model) {
        case ModelKind::prismatic:
            out << "g = " << fmt(prismatic.g) << "\n";
            out << "classify_tol = " << fmt(classify_tol) << "\n\n";
            out << "[masses]\n";
            out << "m_body = " << fmt(prismatic.m_body) << "\n";
            out << "m_foot = " << fmt(prismatic.m_foot) << "\n\n";
            out << "[spring]\n";
            out << "k = " << fmt(prismatic.k) << "\n";
            out << "d = " << fmt(prismatic.d) << "\n";
            break;
        case ModelKind::baton:
            out << "d = " << fmt(baton.d) << "\n";
            out << "g = " << fmt(baton.g) << "\n";
            out << "classify_tol = " << fmt(classify_tol) << "\n\n";
            out << "[masses]\n";
            out << "m_body = " << fmt(baton.m_body) << "\n\n";
            out << "[spring]\n";
            out << "k_r = " << fmt(baton.k_r) << "\n";
            out << "theta_ini = " << fmt(baton.theta_ini) << "\n";
            break;
        case ModelKind::rhomboid:
            out << "L = " << fmt(rhomboid.L) << "\n";
            out << "g = " << fmt(rhomboid.g) << "\n";
            out << "classify_tol = " << fmt(classify_tol) << "\n\n";
            out << "[masses]\n";
            out << "m1 = " << fmt(rhomboid.masses.m1) << "\n";
            out << "m2 = " << fmt(rhomboid.masses.m2) << "\n";
            out << "m3 = " << fmt(rhomboid.masses.m3) << "\n";
            out << "m4 = " << fmt(rhomboid.masses.m4) << "\n";
            out << "m5 = " << fmt(rhomboid.masses.m5) << "\n";
            out << "m6 = " << fmt(rhomboid.masses.m6) << "\n";
            out << "m7 = " << fmt(rhomboid.masses.m7) << "\n";
            out << "m8 = " << fmt(rhomboid.masses.m8) << "\n\n";
            out << "[spring]\n";
            out << "k_r = " << fmt(rhomboid.k_r) << "\n";
            out << "theta_ini = " << fmt(rhomboid.theta_ini) << "\n";
            out << "theta_end = " << fmt(rhomboid.theta_end) << "\n";
            break;
    }
    out << "\n[integrator]\n";
    out << "rel_tol = " << fmt(integrator.rel_tol) << "\n";
    out << "abs_tol = " << fmt(integrator.abs_tol) << "\n";
    out << "max_step = " << fmt(integrator.max_step) << "\n";
    out << "fixed_step = " << fmt(integrator.fixed_step) << "\n";
    out << "contact_stiffness = " << fmt(integrator.contact_stiffness) << "\n";
    return out.str();
}

}  // namespace jumpsim::cli
