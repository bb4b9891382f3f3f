#include "gridmodal/scenario.hpp"

#include "gridmodal/error.hpp"
#include "gridmodal/modal.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace gridmodal {

namespace {

std::string summarize(const std::vector<Issue>& issues) {
    std::string out = issues.size() == 1 ? "invalid scenario: " : "invalid scenario (" +
                                                                     std::to_string(issues.size()) + " problems): ";
    for (std::size_t i = 0; i < issues.size(); ++i) {
        if (i) out += "; ";
        out += issues[i].path.empty() ? issues[i].message : issues[i].path + ": " + issues[i].message;
    }
    return out;
}

}  // namespace

ScenarioError::ScenarioError(std::vector<Issue> issues) : Error(summarize(issues)), issues_(std::move(issues)) {}

}  // namespace gridmodal

namespace gridmodal::scenario {

namespace {

using json = nlohmann::json;

std::string format_value(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

// Field access for one JSON object, recording problems instead of throwing.
class Fields {
public:
    Fields(const json& obj, std::string path, std::vector<Issue>& issues, std::initializer_list<const char*> allowed)
        : obj_(obj), path_(std::move(path)), issues_(issues) {
        if (!obj_.is_object()) {
            report("", "must be an object");
            ok_ = false;
            return;
        }
        for (const auto& [key, value] : obj_.items()) {
            (void)value;
            if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
                report(key, "unknown key");
            }
        }
    }

    bool ok() const { return ok_; }
    bool has(const char* key) const { return ok_ && obj_.contains(key); }
    const json& raw(const char* key) const { return obj_.at(key); }
    std::string path(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    void report(const std::string& key, const std::string& message) {
        issues_.push_back({key.empty() ? path_ : path(key), message});
    }

    std::optional<double> number(const char* key, bool required) {
        if (!has(key)) {
            if (required && ok_) report(key, "is required");
            return std::nullopt;
        }
        const json& v = obj_.at(key);
        if (!v.is_number()) {
            report(key, "must be a number");
            return std::nullopt;
        }
        return v.get<double>();
    }

    // Number constrained to lo < v (or lo <= v) and v < hi; out-of-range values are reported and dropped.
    std::optional<double> ranged(const char* key, bool required, double lo, bool lo_inclusive,
                                 double hi = INFINITY, bool hi_inclusive = false) {
        const auto v = number(key, required);
        if (!v) return v;
        const bool above = lo_inclusive ? *v >= lo : *v > lo;
        const bool below = std::isinf(hi) || (hi_inclusive ? *v <= hi : *v < hi);
        if (above && below) return v;
        std::string range = std::string(lo_inclusive ? "[" : "(") + format_value(lo) + ", " +
                            (std::isinf(hi) ? std::string("inf") : format_value(hi)) + (hi_inclusive ? "]" : ")");
        report(key, "must lie in " + range + ", got " + format_value(*v));
        return std::nullopt;
    }

    std::optional<std::string> text(const char* key, bool required) {
        if (!has(key)) {
            if (required && ok_) report(key, "is required");
            return std::nullopt;
        }
        const json& v = obj_.at(key);
        if (!v.is_string()) {
            report(key, "must be a string");
            return std::nullopt;
        }
        return v.get<std::string>();
    }

    std::optional<bool> boolean(const char* key) {
        if (!has(key)) return std::nullopt;
        const json& v = obj_.at(key);
        if (!v.is_boolean()) {
            report(key, "must be true or false");
            return std::nullopt;
        }
        return v.get<bool>();
    }

private:
    const json& obj_;
    std::string path_;
    std::vector<Issue>& issues_;
    bool ok_ = true;
};

void line_column(std::string_view text, std::size_t byte, std::size_t& line, std::size_t& column) {
    line = 1;
    column = 1;
    const std::size_t end = std::min(byte, text.size());
    for (std::size_t i = 0; i + 1 < end; ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
}

std::optional<models::MachineParams> parse_machine(const json& node, const std::string& path,
                                                   std::vector<Issue>& issues) {
    Fields f(node, path, issues, {"kind", "S", "H", "D", "R", "tau"});
    if (!f.ok()) return std::nullopt;
    const auto kind = f.text("kind", true);
    const auto S = f.ranged("S", true, 0.0, false, 1.0, true);
    const auto H = f.ranged("H", true, 0.0, true);
    if (!kind) return std::nullopt;

    if (*kind == "GC-SG") {
        const auto D = f.ranged("D", false, 0.0, true);
        const auto R = f.ranged("R", true, 0.0, false);
        const auto tau = f.ranged("tau", true, 0.0, false);
        if (H && *H <= 0.0) f.report("H", "must be positive for a GC-SG");
        if (!S || !H || !R || !tau || *H <= 0.0) return std::nullopt;
        return models::MachineParams::gcsg(*S, *H, D.value_or(0.0), *R, *tau);
    }
    if (*kind == "GFM") {
        if (f.has("tau")) f.report("tau", "a GFM machine has no governor time constant");
        const auto D = f.ranged("D", false, 0.0, false);
        const auto R = f.ranged("R", false, 0.0, false);
        const bool has_d = f.has("D");
        const bool has_r = f.has("R");
        if (has_d == has_r) {
            f.report("", "a GFM machine takes exactly one of D (virtual damping) or R (droop)");
            return std::nullopt;
        }
        if (!S || !H || !(D || R)) return std::nullopt;
        return models::MachineParams::gfm(*S, *H, R ? *R : 1.0 / *D);
    }
    f.report("kind", "must be \"GC-SG\" or \"GFM\", got \"" + *kind + "\"");
    return std::nullopt;
}

std::optional<SweepSpec> parse_sweep(const json& node, std::vector<Issue>& issues, std::size_t machines) {
    Fields f(node, "sweep", issues, {"param", "from", "to", "points"});
    if (!f.ok()) return std::nullopt;
    const auto param = f.text("param", true);
    const auto from = f.number("from", true);
    const auto to = f.number("to", true);
    const auto points = f.ranged("points", true, 1.0, true, 100000.0, true);
    if (param) {
        if (!modal::is_sweep_parameter(*param)) {
            f.report("param", "unknown sweep parameter \"" + *param + "\"");
        } else if (std::isdigit(static_cast<unsigned char>(param->back())) &&
                   static_cast<std::size_t>(param->back() - '0') > machines && param->substr(0, 4) != "Pref" &&
                   param->front() != 'V') {
            f.report("param", "\"" + *param + "\" refers to a machine the scenario does not have");
        }
    }
    if (points && std::floor(*points) != *points) f.report("points", "must be an integer");
    if (!param || !from || !to || !points) return std::nullopt;
    return SweepSpec{*param, *from, *to, static_cast<std::size_t>(*points)};
}

std::optional<SimSpec> parse_sim(const json& node, std::vector<Issue>& issues) {
    Fields f(node, "sim", issues, {"input", "magnitude", "relative", "tend", "dt"});
    if (!f.ok()) return std::nullopt;
    SimSpec s;
    bool good = true;
    if (const auto v = f.text("input", false)) {
        static const std::vector<std::string> inputs = {"dPref1", "dPref2", "dwref1", "dwref2", "dRLD"};
        if (std::find(inputs.begin(), inputs.end(), *v) == inputs.end()) {
            f.report("input", "unknown input \"" + *v + "\"");
            good = false;
        } else {
            s.input = *v;
        }
    }
    if (const auto v = f.number("magnitude", false)) s.magnitude = *v;
    if (const auto v = f.boolean("relative")) s.relative = *v;
    if (s.relative && s.input != "dRLD" && f.has("relative")) {
        f.report("relative", "relative magnitudes apply to the dRLD input only");
        good = false;
    }
    if (s.input != "dRLD" && !f.has("relative")) s.relative = false;
    const auto tend = f.ranged("tend", false, 0.0, false);
    const auto dt = f.ranged("dt", false, 0.0, false);
    if (f.has("tend") && !tend) good = false;
    if (f.has("dt") && !dt) good = false;
    if (tend) s.t_end = *tend;
    if (dt) s.dt = *dt;
    if (good && s.dt > s.t_end / 10.0) {
        f.report("dt", "must not exceed tend / 10");
        good = false;
    }
    if (!good) return std::nullopt;
    return s;
}

std::optional<RocofSpec> parse_rocof(const json& node, std::vector<Issue>& issues) {
    Fields f(node, "rocof", issues, {"H", "R_natural", "primary", "secondary", "dP", "windows", "tend", "dt"});
    if (!f.ok()) return std::nullopt;
    RocofSpec r;
    bool good = true;
    auto set = [&](const char* key, bool required, double& out, double lo, bool inclusive) {
        const auto v = f.ranged(key, required, lo, inclusive);
        if (v) out = *v;
        else if (f.has(key) || required) good = false;
    };
    set("H", true, r.system.H_eq, 0.0, false);
    set("R_natural", true, r.system.R_natural_pu, 0.0, false);
    set("dP", false, r.dP, 0.0, false);
    set("tend", false, r.t_end, 0.0, false);
    set("dt", false, r.dt, 0.0, false);

    if (f.has("primary")) {
        Fields p(f.raw("primary"), "rocof.primary", issues, {"R", "tau"});
        const auto R = p.ranged("R", true, 0.0, false);
        const auto tau = p.ranged("tau", true, 0.0, false);
        if (R && tau) r.system.primary = sim::PrimaryRegulation{*R, *tau};
        else good = false;
    }
    if (f.has("secondary")) {
        const json& s = f.raw("secondary");
        if (s.is_boolean()) {
            if (s.get<bool>()) r.system.secondary = sim::SecondaryRegulation{};
        } else {
            Fields sf(s, "rocof.secondary", issues, {"Ki"});
            if (sf.ok()) {
                sim::SecondaryRegulation sec;
                const auto ki = sf.ranged("Ki", false, 0.0, true);
                if (ki) sec.Ki = *ki;
                else if (sf.has("Ki")) good = false;
                r.system.secondary = sec;
            } else {
                good = false;
            }
        }
    }
    if (f.has("windows")) {
        const json& w = f.raw("windows");
        if (!w.is_array() || w.empty()) {
            f.report("windows", "must be a non-empty array of seconds");
            good = false;
        } else {
            r.windows.clear();
            for (std::size_t i = 0; i < w.size(); ++i) {
                if (!w[i].is_number() || !(w[i].get<double>() > 0.0)) {
                    issues.push_back({"rocof.windows[" + std::to_string(i) + "]", "must be a positive number"});
                    good = false;
                } else {
                    r.windows.push_back(w[i].get<double>());
                }
            }
        }
    }
    if (good) {
        for (double w : r.windows) {
            if (w >= r.t_end) {
                f.report("windows", "window " + format_value(w) + " s is not shorter than tend");
                good = false;
            }
        }
        if (r.dt > r.t_end / 10.0) {
            f.report("dt", "must not exceed tend / 10");
            good = false;
        }
    }
    if (!good) return std::nullopt;
    return r;
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        std::size_t line = 0, column = 0;
        line_column(text, e.byte, line, column);
        std::string msg = e.what();
        // Drop the library's "[json.exception.parse_error.101] parse error at ...:" prefix.
        if (const auto pos = msg.find(": syntax error"); pos != std::string::npos) msg = msg.substr(pos + 2);
        throw ScenarioError({{"", "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg}});
    }

    std::vector<Issue> issues;
    Fields root(doc, "", issues, {"name", "base", "network", "dispatch", "machines", "outputs", "sweep", "sim", "rocof"});
    if (!root.ok()) throw ScenarioError(issues);

    Scenario sc;
    sc.name = root.text("name", false).value_or("");

    double f0 = 50.0, sbase = 1.0;
    if (root.has("base")) {
        Fields b(root.raw("base"), "base", issues, {"f0", "Sbase"});
        if (const auto v = b.ranged("f0", false, 0.0, false)) f0 = *v;
        if (const auto v = b.ranged("Sbase", false, 0.0, false)) sbase = *v;
    }
    sc.base = perunit::BaseSystem(f0, sbase);

    const bool has_rocof = root.has("rocof");
    if (has_rocof) sc.rocof = parse_rocof(root.raw("rocof"), issues);

    const bool wants_system = root.has("machines") || root.has("network") || root.has("dispatch") || !has_rocof;
    if (wants_system) {
        SystemCase sys;
        sys.base = sc.base;
        bool good = true;

        std::vector<std::optional<models::MachineParams>> slots;
        if (!root.has("machines")) {
            root.report("machines", "is required");
            good = false;
        } else if (!root.raw("machines").is_array()) {
            root.report("machines", "must be an array");
            good = false;
        } else {
            const json& arr = root.raw("machines");
            if (arr.empty()) {
                root.report("machines", "at least one machine is required");
                good = false;
            } else if (arr.size() > 2) {
                root.report("machines", "at most two machines are supported, got " + std::to_string(arr.size()));
                good = false;
            }
            for (std::size_t i = 0; i < arr.size() && i < 2; ++i) {
                slots.push_back(parse_machine(arr[i], "machines[" + std::to_string(i) + "]", issues));
                if (slots.back()) sys.machines.push_back(*slots.back());
                else good = false;
            }
        }

        if (!root.has("network")) {
            root.report("network", "is required");
            good = false;
        } else {
            Fields n(root.raw("network"), "network", issues, {"SCR", "X", "k", "V1", "V2"});
            if (n.ok()) {
                if (n.has("SCR") == n.has("X")) {
                    n.report("", "specify exactly one of SCR or X");
                    good = false;
                }
                if (const auto v = n.ranged("SCR", false, 0.0, false)) sys.network.scr = *v;
                else if (n.has("SCR")) good = false;
                if (const auto v = n.ranged("X", false, 0.0, false)) sys.network.X = *v;
                else if (n.has("X")) good = false;
                if (const auto v = n.ranged("k", false, 0.0, false, 1.0, false)) sys.network.k = *v;
                else if (n.has("k")) good = false;
                if (const auto v = n.ranged("V1", false, 0.0, false)) sys.network.V1 = *v;
                else if (n.has("V1")) good = false;
                if (const auto v = n.ranged("V2", false, 0.0, false)) sys.network.V2 = *v;
                else if (n.has("V2")) good = false;
            } else {
                good = false;
            }
        }

        if (!root.has("dispatch")) {
            root.report("dispatch", "is required");
            good = false;
        } else {
            Fields d(root.raw("dispatch"), "dispatch", issues, {"Pref1", "Pref2"});
            const bool two = slots.size() == 2;
            if (const auto v = d.ranged("Pref1", true, 0.0, two)) sys.dispatch.pref1 = *v;
            else good = false;
            if (two) {
                if (const auto v = d.ranged("Pref2", true, 0.0, true)) sys.dispatch.pref2 = *v;
                else good = false;
                if (good && !(sys.dispatch.pref1 + sys.dispatch.pref2 > 0.0)) {
                    d.report("", "Pref1 + Pref2 must be positive");
                    good = false;
                }
            } else if (d.has("Pref2")) {
                d.report("Pref2", "a single-machine scenario has no second dispatch");
                good = false;
            }
        }

        if (root.has("outputs")) {
            const json& o = root.raw("outputs");
            static const std::vector<std::string> known = {"dw1", "dw2", "dPe1", "dPe2", "ddelta12", "dPm1", "dPm2"};
            if (!o.is_array() || o.empty()) {
                root.report("outputs", "must be a non-empty array of output names");
                good = false;
            } else {
                sys.outputs.clear();
                for (std::size_t i = 0; i < o.size(); ++i) {
                    const std::string path = "outputs[" + std::to_string(i) + "]";
                    if (!o[i].is_string()) {
                        issues.push_back({path, "must be a string"});
                        good = false;
                        continue;
                    }
                    const std::string name = o[i].get<std::string>();
                    if (std::find(known.begin(), known.end(), name) == known.end()) {
                        issues.push_back({path, "unknown output \"" + name + "\""});
                        good = false;
                        continue;
                    }
                    if (name.starts_with("dPm")) {
                        const std::size_t idx = static_cast<std::size_t>(name.back() - '1');
                        if (idx < slots.size() && slots[idx] && slots[idx]->is_gfm()) {
                            issues.push_back({path, "machine " + std::to_string(idx + 1) +
                                                        " is a GFM and has no mechanical power state"});
                            good = false;
                            continue;
                        }
                    }
                    sys.outputs.push_back(name);
                }
                if (slots.size() == 1) {
                    root.report("outputs", "single-machine models have fixed outputs dw1, dPe1");
                    good = false;
                }
            }
        }

        if (root.has("sweep")) sc.sweep = parse_sweep(root.raw("sweep"), issues, slots.size());
        if (good) sc.system = std::move(sys);
    } else if (root.has("sweep")) {
        root.report("sweep", "a sweep needs machines and a network");
    }
    if (root.has("sim")) sc.sim = parse_sim(root.raw("sim"), issues);

    if (!issues.empty()) throw ScenarioError(std::move(issues));
    return sc;
}

std::filesystem::path resolve_scenario_path(const std::string& path) {
    namespace fs = std::filesystem;
    const fs::path p(path);
    if (fs::exists(p) || p.has_extension() || p.has_parent_path()) return p;
    std::string name = path;
    if (name == "lowHlowR") name = "rocof-lowH";
    if (name == "conventional") name = "rocof-conventional";
    return fs::path(GRIDMODAL_SCENARIO_DIR) / (name + ".json");
}

Scenario load_scenario(const std::string& path) {
    const std::filesystem::path p = resolve_scenario_path(path);
    std::ifstream in(p, std::ios::binary);
    if (!in) throw ScenarioError({{"", "cannot open scenario file " + p.string()}});
    std::ostringstream buf;
    buf << in.rdbuf();
    Scenario sc = parse_scenario(buf.str());
    if (sc.name.empty()) sc.name = p.stem().string();
    return sc;
}

}  // namespace gridmodal::scenario
