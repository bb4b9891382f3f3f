#pragma once

// CLI subcommands as library functions: each returns the console report and
// the files to write, so the CLI itself only does I/O.

#include "gridmodal/scenario.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gridmodal::commands {

struct Flags {
    bool svg = false;
    std::optional<std::string> param;
    std::optional<double> from;
    std::optional<double> to;
    std::optional<std::size_t> points;
    std::optional<double> dt;
    std::optional<double> t_end;
    std::optional<std::vector<double>> windows;
};

struct Artifacts {
    std::string report;
    std::vector<std::pair<std::string, std::string>> files;  // file name, content
};

Artifacts cmd_op(const scenario::Scenario& sc, const Flags& flags = {});
Artifacts cmd_modal(const scenario::Scenario& sc, const Flags& flags = {});
Artifacts cmd_sweep(const scenario::Scenario& sc, const Flags& flags = {});
Artifacts cmd_sim(const scenario::Scenario& sc, const Flags& flags = {});
Artifacts cmd_rocof(const scenario::Scenario& sc, const Flags& flags = {});

/// Dispatch by subcommand name. Errors are rethrown with the scenario name and
/// the scenario block they concern prefixed.
Artifacts run(std::string_view command, const scenario::Scenario& sc, const Flags& flags = {});

/// Writes every file of `a` under `dir`, creating it when needed.
void write_artifacts(const Artifacts& a, const std::filesystem::path& dir);

/// "0.05,0.5" -> {0.05, 0.5}. Throws DomainError on malformed input.
std::vector<double> parse_windows(std::string_view text);

}  // namespace gridmodal::commands
