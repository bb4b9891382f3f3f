#pragma once

// Scenario documents (JSON). See README for the schema.

#include "gridmodal/perunit.hpp"
#include "gridmodal/sim.hpp"
#include "gridmodal/system.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gridmodal::scenario {

struct SweepSpec {
    std::string param;
    double from = 0.0;
    double to = 0.0;
    std::size_t points = 0;
};

struct SimSpec {
    std::string input = "dRLD";
    double magnitude = -0.01;
    bool relative = true;  // magnitude is a fraction of R_LD0 (dRLD only)
    double t_end = 10.0;
    double dt = 1e-3;
};

struct RocofSpec {
    sim::AggregateSystem system;
    double dP = 0.25;
    std::vector<double> windows = {0.05, 0.5};
    double t_end = 20.0;
    double dt = 1e-3;
};

struct Scenario {
    std::string name;
    perunit::BaseSystem base;
    std::optional<SystemCase> system;  // absent for rocof-only documents
    std::optional<SweepSpec> sweep;
    std::optional<SimSpec> sim;
    std::optional<RocofSpec> rocof;
};

/// Parses and validates a scenario document. Throws ScenarioError listing every
/// problem found; syntax errors carry "line L, column C".
Scenario parse_scenario(std::string_view text);

/// Reads `path`; a bare fixture name (no extension, not an existing file) is
/// looked up among the bundled scenarios.
Scenario load_scenario(const std::string& path);

std::filesystem::path resolve_scenario_path(const std::string& path);

}  // namespace gridmodal::scenario
