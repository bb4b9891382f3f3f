#include "gridmodal/error.hpp"
#include "gridmodal/modal.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

namespace gridmodal::modal {

namespace {

constexpr std::array<std::string_view, 17> kParameters = {
    "H1", "H2", "D1", "D2", "R1", "R2", "Tg1", "Tg2", "S1", "S2",
    "SCR", "X", "k", "Pref1", "Pref2", "V1", "V2",
};

constexpr std::array<std::string_view, 7> kOperatingParameters = {"SCR", "X", "k", "Pref1", "Pref2", "V1", "V2"};

void set_machine_parameter(models::MachineParams& m, std::string_view base, double value) {
    if (base == "S") {
        m.S_pu = value;
        return;
    }
    if (auto* g = std::get_if<models::GcsgParams>(&m.control)) {
        if (base == "H") g->H = value;
        else if (base == "D") g->D_pu = value;
        else if (base == "R") g->R_pu = value;
        else if (base == "Tg") g->Tg = value;
        return;
    }
    auto& f = std::get<models::GfmParams>(m.control);
    if (base == "H") {
        f.H_virtual = value;
    } else if (base == "D") {
        if (!(value > 0.0)) throw DomainError("GFM damping D must be positive");
        f.R_droop_pu = 1.0 / value;
    } else if (base == "R") {
        f.R_droop_pu = value;
    } else {
        throw DomainError("parameter " + std::string(base) + " does not exist for a GFM machine");
    }
}

// Optimal assignment of previous-point modes to current-point modes by total
// |d lambda|; pairs farther apart than the allowed jump stay unmatched.
std::vector<int> match_modes(const std::vector<Complex>& prev, const std::vector<double>& allowed,
                             const std::vector<Complex>& next) {
    const std::size_t np = prev.size();
    const std::size_t nn = next.size();
    std::vector<int> assign(np, -1);
    if (np == 0 || nn == 0) return assign;

    if (nn <= 16) {
        const std::size_t masks = std::size_t{1} << nn;
        constexpr double inf = std::numeric_limits<double>::infinity();
        // cost[i][mask]: best cost for prev[i..] given next-modes in mask are taken.
        std::vector<std::vector<double>> cost(np + 1, std::vector<double>(masks, inf));
        std::vector<std::vector<int>> choice(np + 1, std::vector<int>(masks, -1));
        for (std::size_t mask = 0; mask < masks; ++mask) cost[np][mask] = 0.0;
        for (std::size_t ii = np; ii-- > 0;) {
            for (std::size_t mask = 0; mask < masks; ++mask) {
                double best = allowed[ii] + cost[ii + 1][mask];
                int pick = -1;
                for (std::size_t j = 0; j < nn; ++j) {
                    if (mask & (std::size_t{1} << j)) continue;
                    const double dist = std::abs(prev[ii] - next[j]);
                    if (dist > allowed[ii]) continue;
                    const double c = dist + cost[ii + 1][mask | (std::size_t{1} << j)];
                    if (c < best) {
                        best = c;
                        pick = static_cast<int>(j);
                    }
                }
                cost[ii][mask] = best;
                choice[ii][mask] = pick;
            }
        }
        std::size_t mask = 0;
        for (std::size_t ii = 0; ii < np; ++ii) {
            assign[ii] = choice[ii][mask];
            if (assign[ii] >= 0) mask |= std::size_t{1} << assign[ii];
        }
        return assign;
    }

    // Greedy fallback for very large mode sets.
    struct Pair {
        double dist;
        std::size_t i, j;
    };
    std::vector<Pair> pairs;
    for (std::size_t i = 0; i < np; ++i)
        for (std::size_t j = 0; j < nn; ++j) {
            const double dist = std::abs(prev[i] - next[j]);
            if (dist <= allowed[i]) pairs.push_back({dist, i, j});
        }
    std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) { return a.dist < b.dist; });
    std::vector<bool> used(nn, false);
    for (const Pair& p : pairs) {
        if (assign[p.i] >= 0 || used[p.j]) continue;
        assign[p.i] = static_cast<int>(p.j);
        used[p.j] = true;
    }
    return assign;
}

}  // namespace

bool is_sweep_parameter(std::string_view name) {
    return std::find(kParameters.begin(), kParameters.end(), name) != kParameters.end();
}

bool affects_operating_point(std::string_view name) {
    return std::find(kOperatingParameters.begin(), kOperatingParameters.end(), name) != kOperatingParameters.end();
}

SystemCase with_parameter(const SystemCase& sc, std::string_view name, double value) {
    if (!is_sweep_parameter(name)) throw DomainError("unknown sweep parameter '" + std::string(name) + "'");
    SystemCase out = sc;
    if (name == "SCR") {
        out.network.scr = value;
        out.network.X.reset();
    } else if (name == "X") {
        out.network.X = value;
        out.network.scr.reset();
    } else if (name == "k") {
        out.network.k = value;
    } else if (name == "V1") {
        out.network.V1 = value;
    } else if (name == "V2") {
        out.network.V2 = value;
    } else if (name == "Pref1") {
        out.dispatch.pref1 = value;
    } else if (name == "Pref2") {
        out.dispatch.pref2 = value;
    } else {
        const char idx = name.back();
        const std::size_t machine = static_cast<std::size_t>(idx - '1');
        if (machine >= out.machines.size()) {
            throw DomainError("parameter " + std::string(name) + " refers to a machine the case does not have");
        }
        set_machine_parameter(out.machines[machine], name.substr(0, name.size() - 1), value);
    }
    return out;
}

std::vector<const Trajectory*> SweepResult::trajectories_labeled(ModeLabel label) const {
    std::vector<const Trajectory*> out;
    for (const Trajectory& t : trajectories)
        if (t.label == label) out.push_back(&t);
    return out;
}

SweepResult sweep(const SystemCase& sc, std::string_view parameter, std::span<const double> values,
                  const SweepOptions& options) {
    if (!is_sweep_parameter(parameter)) throw DomainError("unknown sweep parameter '" + std::string(parameter) + "'");

    SweepResult result;
    result.parameter = std::string(parameter);
    result.points.resize(values.size());

    const bool moves_equilibrium = affects_operating_point(parameter);
    std::optional<operating::OperatingPoint> shared_op;
    std::string shared_error;
    if (!moves_equilibrium) {
        try {
            shared_op = assemble(sc).op;
        } catch (const Error& e) {
            shared_error = e.what();
        }
    }

    for (std::size_t i = 0; i < values.size(); ++i) {
        SweepPoint& pt = result.points[i];
        pt.value = values[i];
        try {
            if (!moves_equilibrium && !shared_op) throw InfeasibleError(shared_error, 0, 0.0);
            const SystemCase point_case = with_parameter(sc, parameter, values[i]);
            const Assembly a = moves_equilibrium ? assemble(point_case) : assemble_at(point_case, *shared_op);
            pt.modes = analyze(a.model, options.classifier);
        } catch (const Error& e) {
            pt.error = e.what();
        }
    }

    // Trace trajectories through consecutive successful points.
    std::vector<std::size_t> open;  // indices into result.trajectories
    for (std::size_t i = 0; i < result.points.size(); ++i) {
        const SweepPoint& pt = result.points[i];
        if (!pt.modes) {
            open.clear();
            continue;
        }
        const std::vector<Mode>& current = pt.modes->modes;
        std::vector<Complex> prev_l;
        std::vector<double> allowed;
        for (std::size_t t : open) {
            const Complex l = result.trajectories[t].points.back().mode.lambda;
            prev_l.push_back(l);
            allowed.push_back(options.jump_abs + options.jump_rel * std::abs(l));
        }
        std::vector<Complex> next_l;
        for (const Mode& m : current) next_l.push_back(m.lambda);

        const std::vector<int> assign = match_modes(prev_l, allowed, next_l);
        std::vector<bool> taken(current.size(), false);
        std::vector<std::size_t> next_open;
        for (std::size_t o = 0; o < open.size(); ++o) {
            if (assign[o] < 0) continue;
            const std::size_t j = static_cast<std::size_t>(assign[o]);
            taken[j] = true;
            result.trajectories[open[o]].points.push_back({i, current[j]});
            next_open.push_back(open[o]);
        }
        for (std::size_t j = 0; j < current.size(); ++j) {
            if (taken[j]) continue;
            result.trajectories.push_back({current[j].label, {{i, current[j]}}});
            next_open.push_back(result.trajectories.size() - 1);
        }
        open = std::move(next_open);
    }
    return result;
}

std::vector<double> linspace(double from, double to, std::size_t points) {
    if (points == 0) return {};
    if (points == 1) return {from};
    std::vector<double> out(points);
    for (std::size_t i = 0; i < points; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(points - 1);
        out[i] = i + 1 == points ? to : from + (to - from) * t;
    }
    return out;
}

}  // namespace gridmodal::modal
