#pragma once

#include <string>

#include "jumpsim/baton.hpp"
#include "jumpsim/integrator.hpp"
#include "jumpsim/prismatic.hpp"
#include "jumpsim/rhomboid.hpp"

#include "toml_lite.hpp"

// Run configuration ingested from a TOML file with sections [model],
// [masses], [spring] and optional [integrator]. Angles may be given in
// degrees with a `_deg` key suffix; everything is SI radians internally.

namespace jumpsim::cli {

enum class ModelKind { prismatic, baton, rhomboid };

const char* to_string(ModelKind kind);

struct RunConfig {
    ModelKind model = ModelKind::rhomboid;
    prismatic::Config prismatic;
    baton::Config baton;
    rhomboid::Config rhomboid;
    IntegratorSettings integrator;
    double classify_tol = kClassifyTolDefault;

    static RunConfig from_table(const TomlTable& table);
    static RunConfig from_file(const std::string& path);

    /// Serialises the effective (fully resolved) configuration; the output
    /// re-parses to an identical run.
    std::string dump() const;
};

}  // namespace jumpsim::cli
