#include "gridmodal/commands.hpp"
#include "gridmodal/error.hpp"
#include "gridmodal/scenario.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

int main(int argc, char** argv) {
    using namespace gridmodal;

    CLI::App app{"Small-signal analysis of one- and two-machine microgrids"};
    app.require_subcommand(1, 1);

    commands::Flags flags;
    std::string scenario_path;
    std::string out_dir;
    std::string windows;

    const char* names[] = {"op", "modal", "sweep", "sim", "rocof"};
    const char* help[] = {"operating point", "eigenvalue table", "parameter sweep", "step response",
                          "RoCoF and nadir study"};
    for (int i = 0; i < 5; ++i) {
        CLI::App* sub = app.add_subcommand(names[i], help[i]);
        sub->add_option("scenario", scenario_path, "scenario file or bundled fixture name")->required();
        sub->add_option("--out", out_dir, "output directory (default $GRIDMODAL_OUT or .)");
        sub->add_flag("--svg", flags.svg, "also write SVG plots");
        if (std::string_view(names[i]) == "sweep") {
            sub->add_option("--param", flags.param, "parameter to sweep");
            sub->add_option("--from", flags.from, "first grid value");
            sub->add_option("--to", flags.to, "last grid value");
            sub->add_option("--points", flags.points, "grid size")->check(CLI::PositiveNumber);
        }
        if (std::string_view(names[i]) == "sim" || std::string_view(names[i]) == "rocof") {
            sub->add_option("--dt", flags.dt, "time step, s")->check(CLI::PositiveNumber);
            sub->add_option("--tend", flags.t_end, "horizon, s")->check(CLI::PositiveNumber);
        }
        if (std::string_view(names[i]) == "rocof") {
            sub->add_option("--windows", windows, "RoCoF windows in s, comma separated");
        }
    }

    CLI11_PARSE(app, argc, argv);
    const std::string command = app.get_subcommands().front()->get_name();

    try {
        if (!windows.empty()) flags.windows = commands::parse_windows(windows);
        if (out_dir.empty()) {
            const char* env = std::getenv("GRIDMODAL_OUT");
            out_dir = env && *env ? env : ".";
        }
        const scenario::Scenario sc = scenario::load_scenario(scenario_path);
        const commands::Artifacts a = commands::run(command, sc, flags);
        commands::write_artifacts(a, out_dir);
        std::cout << a.report;
        for (const auto& f : a.files) std::cout << "wrote " << (std::filesystem::path(out_dir) / f.first).string() << "\n";
    } catch (const ScenarioError& e) {
        std::cerr << "gridmodal: invalid scenario " << scenario_path << "\n";
        for (const Issue& i : e.issues()) {
            std::cerr << "  " << (i.path.empty() ? std::string() : i.path + ": ") << i.message << "\n";
        }
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "gridmodal: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
