#include "gridmodal/commands.hpp"

#include "gridmodal/error.hpp"
#include "gridmodal/modal.hpp"
#include "gridmodal/report.hpp"
#include "gridmodal/sim.hpp"

#include <charconv>
#include <fstream>

namespace gridmodal::commands {

namespace {

const SystemCase& require_system(const scenario::Scenario& sc) {
    if (!sc.system) throw DomainError("scenario has no machines/network/dispatch blocks");
    return *sc.system;
}

std::string file_stem(const scenario::Scenario& sc) { return sc.name.empty() ? "scenario" : sc.name; }

// Which scenario blocks an analysis failure most likely concerns.
std::string context_for(std::string_view command, const Error& e) {
    if (dynamic_cast<const InfeasibleError*>(&e)) return "network, dispatch";
    if (command == "rocof") return "rocof";
    if (command == "sweep") return "sweep";
    if (command == "sim") return "sim";
    return "machines, network";
}

}  // namespace

Artifacts cmd_op(const scenario::Scenario& sc, const Flags&) {
    const Assembly a = assemble(require_system(sc));
    Artifacts out;
    out.report = report::operating_point_text(a.op, a.net);
    out.files.push_back({file_stem(sc) + "_op.csv", report::operating_point_csv(a.op)});
    return out;
}

Artifacts cmd_modal(const scenario::Scenario& sc, const Flags&) {
    const Assembly a = assemble(require_system(sc));
    const modal::ModeSet modes = modal::analyze(a.model);
    Artifacts out;
    out.report = report::mode_table(modes);
    const auto& machines = require_system(sc).machines;
    for (std::size_t i = 0; i < machines.size(); ++i) {
        const auto* g = std::get_if<models::GfmParams>(&machines[i].control);
        if (!g) continue;
        out.report += "G" + std::to_string(i + 1) + " GFM implied Tf, " +
                      report::num(models::filter_time_constant(g->H_virtual, g->R_droop_pu)) + " s\n";
    }
    out.files.push_back({file_stem(sc) + "_modes.csv", report::modes_csv(modes)});
    return out;
}

Artifacts cmd_sweep(const scenario::Scenario& sc, const Flags& flags) {
    const SystemCase& sys = require_system(sc);
    scenario::SweepSpec spec = sc.sweep.value_or(scenario::SweepSpec{});
    if (flags.param) spec.param = *flags.param;
    if (flags.from) spec.from = *flags.from;
    if (flags.to) spec.to = *flags.to;
    if (flags.points) spec.points = *flags.points;
    if (spec.param.empty() || spec.points == 0) {
        throw DomainError("sweep needs a parameter and a grid (--param, --from, --to, --points or a sweep block)");
    }
    const std::vector<double> grid = modal::linspace(spec.from, spec.to, spec.points);
    const modal::SweepResult result = modal::sweep(sys, spec.param, grid);

    Artifacts out;
    std::size_t failed = 0;
    out.report = spec.param + ", swing eigenvalue, Freq (Hz), zeta\n";
    for (const modal::SweepPoint& pt : result.points) {
        out.report += report::num(pt.value) + ", ";
        if (!pt.modes) {
            ++failed;
            out.report += "failed: " + pt.error + "\n";
            continue;
        }
        const modal::Mode* swing = pt.modes->first(modal::ModeLabel::Swing);
        if (!swing) {
            out.report += "no swing mode\n";
            continue;
        }
        out.report += report::eigenvalue_text(*swing) + ", " + report::fixed(swing->freq_hz, 3) + ", " +
                      report::fixed(swing->zeta, 3) + "\n";
    }
    if (failed) out.report += std::to_string(failed) + " of " + std::to_string(result.points.size()) + " points failed\n";
    out.files.push_back({file_stem(sc) + "_sweep.csv", report::sweep_csv(result)});
    if (flags.svg) out.files.push_back({file_stem(sc) + "_sweep.svg", report::root_locus_svg(result)});
    return out;
}

Artifacts cmd_sim(const scenario::Scenario& sc, const Flags& flags) {
    const SystemCase& sys = require_system(sc);
    scenario::SimSpec spec = sc.sim.value_or(scenario::SimSpec{});
    if (flags.dt) spec.dt = *flags.dt;
    if (flags.t_end) spec.t_end = *flags.t_end;

    const Assembly a = assemble(sys);
    const double magnitude = spec.relative ? spec.magnitude * a.op.R_LD : spec.magnitude;
    const sim::TimeSeries ts =
        sim::to_report_units(sim::step_response(a.model, spec.input, magnitude, spec.t_end, spec.dt));

    Artifacts out;
    out.report = "step " + spec.input + " = " + report::num(magnitude) + ", t_end " + report::num(spec.t_end) +
                 " s, dt " + report::num(spec.dt) + " s\n";
    out.report += "channel, final value, peak |value|\n";
    for (const sim::Channel& c : ts.channels) {
        double peak = 0.0;
        for (double v : c.values) peak = std::max(peak, std::abs(v));
        out.report += c.name + ", " + report::num(c.values.back()) + " " + c.unit + ", " + report::num(peak) + " " +
                      c.unit + "\n";
    }
    out.files.push_back({file_stem(sc) + "_sim.csv", report::timeseries_csv(ts)});
    if (flags.svg) out.files.push_back({file_stem(sc) + "_sim.svg", report::timeseries_svg(ts)});
    return out;
}

Artifacts cmd_rocof(const scenario::Scenario& sc, const Flags& flags) {
    if (!sc.rocof) throw DomainError("scenario has no rocof block");
    scenario::RocofSpec spec = *sc.rocof;
    if (flags.windows) spec.windows = *flags.windows;
    if (flags.dt) spec.dt = *flags.dt;
    if (flags.t_end) spec.t_end = *flags.t_end;

    const sim::RocofResult r = sim::rocof_study(spec.system, spec.dP, spec.windows, spec.t_end, spec.dt, sc.base.f0());
    Artifacts out;
    out.report = report::rocof_text(r.metrics);
    out.files.push_back({file_stem(sc) + "_rocof.csv", report::rocof_csv(r.metrics)});
    out.files.push_back({file_stem(sc) + "_rocof_series.csv", report::timeseries_csv(r.series)});
    if (flags.svg) out.files.push_back({file_stem(sc) + "_rocof.svg", report::timeseries_svg(r.series)});
    return out;
}

Artifacts run(std::string_view command, const scenario::Scenario& sc, const Flags& flags) {
    try {
        if (command == "op") return cmd_op(sc, flags);
        if (command == "modal") return cmd_modal(sc, flags);
        if (command == "sweep") return cmd_sweep(sc, flags);
        if (command == "sim") return cmd_sim(sc, flags);
        if (command == "rocof") return cmd_rocof(sc, flags);
    } catch (const ScenarioError&) {
        throw;
    } catch (const Error& e) {
        throw Error(file_stem(sc) + " [" + context_for(command, e) + "]: " + e.what());
    }
    throw DomainError("unknown command '" + std::string(command) + "'");
}

void write_artifacts(const Artifacts& a, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    for (const auto& [name, content] : a.files) {
        const std::filesystem::path p = dir / name;
        std::ofstream f(p, std::ios::binary | std::ios::trunc);
        f << content;
        if (!f) throw Error("cannot write " + p.string());
    }
}

std::vector<double> parse_windows(std::string_view text) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = std::min(text.find(',', start), text.size());
        const std::string_view item = text.substr(start, end - start);
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size() || !(v > 0.0)) {
            throw DomainError("--windows expects positive seconds separated by commas, got '" + std::string(text) + "'");
        }
        out.push_back(v);
        start = end + 1;
    }
    return out;
}

}  // namespace gridmodal::commands
