#include "gridmodal/report.hpp"

#include "gridmodal/error.hpp"
#include "gridmodal/perunit.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>

namespace gridmodal::report {

namespace {

constexpr std::array<const char*, 6> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(s.substr(start));
            break;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

std::vector<std::vector<std::string_view>> rows_of(std::string_view text) {
    std::vector<std::vector<std::string_view>> rows;
    for (std::string_view line : split(text, '\n')) {
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;
        rows.push_back(split(line, ','));
    }
    if (rows.empty()) throw Error("CSV: no header row");
    return rows;
}

double parse_num(std::string_view s) {
    if (s == "nan") return std::nan("");
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw Error("CSV: not a number: '" + std::string(s) + "'");
    return v;
}

std::size_t parse_index(std::string_view s) {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw Error("CSV: not an index: '" + std::string(s) + "'");
    return v;
}

void expect_header(const std::vector<std::string_view>& got, std::initializer_list<std::string_view> want) {
    if (got.size() < want.size() || !std::equal(want.begin(), want.end(), got.begin())) {
        throw Error("CSV: unexpected header");
    }
}

modal::ModeLabel parse_label_or_throw(std::string_view s) {
    const auto l = modal::parse_label(s);
    if (!l) throw Error("CSV: unknown mode label '" + std::string(s) + "'");
    return *l;
}

modal::Mode mode_from(double re, double im, double freq, double zeta, modal::ModeLabel label) {
    modal::Mode m;
    m.lambda = {re, im};
    m.is_real = im == 0.0;
    m.freq_hz = freq;
    m.zeta = zeta;
    m.label = label;
    return m;
}

std::string clean_message(std::string s) {
    std::replace(s.begin(), s.end(), ',', ';');
    std::replace(s.begin(), s.end(), '\n', ' ');
    return s;
}

int label_rank(modal::ModeLabel l) {
    switch (l) {
        case modal::ModeLabel::Swing: return 0;
        case modal::ModeLabel::TurbineGovernor: return 1;
        case modal::ModeLabel::Governor: return 2;
        case modal::ModeLabel::Real: return 3;
        case modal::ModeLabel::Unclassified: return 4;
    }
    return 5;
}

struct Axis {
    double lo, hi;
    void include(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void finish() {
        if (!(hi > lo)) {
            const double pad = std::max(1.0, std::abs(lo)) * 0.5;
            lo -= pad;
            hi += pad;
        }
    }
    double map(double v, double a, double b) const { return a + (v - lo) / (hi - lo) * (b - a); }
};

std::string svg_header(int w, int h) {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(w) + "\" height=\"" +
           std::to_string(h) + "\" viewBox=\"0 0 " + std::to_string(w) + " " + std::to_string(h) +
           "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

std::string svg_text(double x, double y, const std::string& s, const char* anchor = "start") {
    return "<text x=\"" + fixed(x, 1) + "\" y=\"" + fixed(y, 1) + "\" font-family=\"sans-serif\" font-size=\"11\" "
           "text-anchor=\"" + anchor + "\">" + s + "</text>\n";
}

std::string svg_frame(double x0, double y0, double x1, double y1, const Axis& ax, const Axis& ay) {
    std::string out = "<rect x=\"" + fixed(x0, 1) + "\" y=\"" + fixed(y0, 1) + "\" width=\"" + fixed(x1 - x0, 1) +
                      "\" height=\"" + fixed(y1 - y0, 1) + "\" fill=\"none\" stroke=\"black\"/>\n";
    out += svg_text(x0, y1 + 14, num(ax.lo));
    out += svg_text(x1, y1 + 14, num(ax.hi), "end");
    out += svg_text(x0 - 4, y1, num(ay.lo), "end");
    out += svg_text(x0 - 4, y0 + 10, num(ay.hi), "end");
    return out;
}

}  // namespace

std::string num(double v) {
    if (v == 0.0) return "0";
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    std::string s = buf;
    if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
    return s;
}

std::string eigenvalue_text(const modal::Mode& mode, int decimals) {
    if (mode.is_real) return fixed(mode.lambda.real(), decimals);
    return fixed(mode.lambda.real(), decimals) + " ± " + fixed(std::abs(mode.lambda.imag()), decimals) + "j";
}

std::string operating_point_text(const operating::OperatingPoint& op, const netred::NetworkParams& net) {
    using perunit::deg_from_rad;
    std::string out;
    out += "R_LD, " + fixed(op.R_LD, 4) + " pu\n";
    out += "|V3|, " + fixed(op.V3, 4) + " pu\n";
    out += "delta12, " + fixed(deg_from_rad(op.delta12), 2) + " deg\n";
    out += "delta13, " + fixed(deg_from_rad(op.delta13), 2) + " deg\n";
    out += "delta23, " + fixed(deg_from_rad(op.delta23), 2) + " deg\n";
    out += "Pe1, " + fixed(op.pe1, 4) + " pu\n";
    out += "Pe2, " + fixed(op.pe2, 4) + " pu\n";
    out += "X, " + fixed(net.X, 4) + " pu\n";
    out += "k, " + fixed(net.k, 4) + "\n";
    out += "iterations, " + std::to_string(op.iterations) + "\n";
    return out;
}

std::string operating_point_csv(const operating::OperatingPoint& op) {
    using perunit::deg_from_rad;
    std::string out = "quantity,value,unit\n";
    out += "R_LD," + num(op.R_LD) + ",pu\n";
    out += "V3," + num(op.V3) + ",pu\n";
    out += "delta12," + num(deg_from_rad(op.delta12)) + ",deg\n";
    out += "delta13," + num(deg_from_rad(op.delta13)) + ",deg\n";
    out += "delta23," + num(deg_from_rad(op.delta23)) + ",deg\n";
    out += "Pe1," + num(op.pe1) + ",pu\n";
    out += "Pe2," + num(op.pe2) + ",pu\n";
    out += "iterations," + std::to_string(op.iterations) + ",\n";
    return out;
}

std::string mode_table(const modal::ModeSet& modes) {
    std::vector<const modal::Mode*> order;
    for (const modal::Mode& m : modes.modes) order.push_back(&m);
    std::stable_sort(order.begin(), order.end(), [](const modal::Mode* a, const modal::Mode* b) {
        return label_rank(a->label) < label_rank(b->label);
    });
    std::string out = "Mode, Eigenvalue, Freq (Hz), zeta\n";
    for (const modal::Mode* m : order) {
        out += std::string(modal::to_string(m->label)) + ", " + eigenvalue_text(*m) + ", ";
        out += m->is_real ? "---, ---" : fixed(m->freq_hz, 3) + ", " + fixed(m->zeta, 3);
        out += "\n";
    }
    return out;
}

std::string modes_csv(const modal::ModeSet& modes) {
    std::string out = "label,re,im,freq_hz,zeta";
    for (const std::string& s : modes.state_labels) out += ",p_" + s;
    out += "\n";
    for (const modal::Mode& m : modes.modes) {
        out += std::string(modal::to_string(m.label)) + "," + num(m.lambda.real()) + "," + num(m.lambda.imag()) + "," +
               num(m.freq_hz) + "," + num(m.zeta);
        // Rounding-level participations would make the file platform-dependent.
        for (double p : m.participation) out += "," + num(p < 1e-12 ? 0.0 : p);
        out += "\n";
    }
    return out;
}

modal::ModeSet read_modes_csv(std::string_view text) {
    const auto rows = rows_of(text);
    expect_header(rows[0], {"label", "re", "im", "freq_hz", "zeta"});
    modal::ModeSet set;
    for (std::size_t c = 5; c < rows[0].size(); ++c) {
        std::string_view h = rows[0][c];
        if (!h.starts_with("p_")) throw Error("CSV: participation columns must start with p_");
        set.state_labels.emplace_back(h.substr(2));
    }
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.size() != rows[0].size()) throw Error("CSV: row " + std::to_string(r) + " has wrong column count");
        modal::Mode m = mode_from(parse_num(row[1]), parse_num(row[2]), parse_num(row[3]), parse_num(row[4]),
                                  parse_label_or_throw(row[0]));
        for (std::size_t c = 5; c < row.size(); ++c) m.participation.push_back(parse_num(row[c]));
        set.modes.push_back(std::move(m));
    }
    return set;
}

std::string sweep_csv(const modal::SweepResult& result) {
    // Trajectory id of each (grid point, mode) pair.
    std::map<std::size_t, std::vector<std::pair<std::size_t, modal::Complex>>> owners;
    for (std::size_t t = 0; t < result.trajectories.size(); ++t)
        for (const modal::TrajectoryPoint& p : result.trajectories[t].points)
            owners[p.grid_index].push_back({t, p.mode.lambda});

    std::string out = "parameter,point,value,trajectory,re,im,freq_hz,zeta,label,error\n";
    for (std::size_t i = 0; i < result.points.size(); ++i) {
        const modal::SweepPoint& pt = result.points[i];
        const std::string head = result.parameter + "," + std::to_string(i) + "," + num(pt.value) + ",";
        if (!pt.modes) {
            out += head + ",,,,,," + clean_message(pt.error.empty() ? "failed" : pt.error) + "\n";
            continue;
        }
        auto& candidates = owners[i];
        for (const modal::Mode& m : pt.modes->modes) {
            std::string id;
            for (auto it = candidates.begin(); it != candidates.end(); ++it) {
                if (it->second == m.lambda) {
                    id = std::to_string(it->first);
                    candidates.erase(it);
                    break;
                }
            }
            out += head + id + "," + num(m.lambda.real()) + "," + num(m.lambda.imag()) + "," + num(m.freq_hz) + "," +
                   num(m.zeta) + "," + std::string(modal::to_string(m.label)) + ",\n";
        }
    }
    return out;
}

modal::SweepResult read_sweep_csv(std::string_view text) {
    const auto rows = rows_of(text);
    expect_header(rows[0], {"parameter", "point", "value", "trajectory", "re", "im", "freq_hz", "zeta", "label", "error"});
    modal::SweepResult result;
    std::map<std::size_t, modal::Trajectory> trajectories;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.size() != 10) throw Error("CSV: row " + std::to_string(r) + " has wrong column count");
        if (result.parameter.empty()) result.parameter = std::string(row[0]);
        const std::size_t index = parse_index(row[1]);
        if (index == result.points.size()) {
            modal::SweepPoint pt;
            pt.value = parse_num(row[2]);
            if (row[8].empty()) pt.error = std::string(row[9]);
            else pt.modes = modal::ModeSet{};
            result.points.push_back(std::move(pt));
        } else if (index + 1 != result.points.size()) {
            throw Error("CSV: sweep rows out of order at row " + std::to_string(r));
        }
        if (row[8].empty()) continue;
        const modal::Mode m = mode_from(parse_num(row[4]), parse_num(row[5]), parse_num(row[6]), parse_num(row[7]),
                                        parse_label_or_throw(row[8]));
        if (!result.points.back().modes) throw Error("CSV: failed sweep point also lists modes");
        result.points.back().modes->modes.push_back(m);
        if (!row[3].empty()) {
            modal::Trajectory& t = trajectories[parse_index(row[3])];
            if (t.points.empty()) t.label = m.label;
            t.points.push_back({index, m});
        }
    }
    for (auto& [id, t] : trajectories) {
        (void)id;
        result.trajectories.push_back(std::move(t));
    }
    return result;
}

std::string timeseries_csv(const sim::TimeSeries& ts) {
    ts.validate();
    std::string out = "t [s]";
    for (const sim::Channel& c : ts.channels) out += "," + c.name + " [" + c.unit + "]";
    out += "\n";
    for (std::size_t i = 0; i < ts.t.size(); ++i) {
        out += num(ts.t[i]);
        for (const sim::Channel& c : ts.channels) out += "," + num(c.values[i]);
        out += "\n";
    }
    return out;
}

sim::TimeSeries read_timeseries_csv(std::string_view text) {
    const auto rows = rows_of(text);
    if (rows[0].empty() || rows[0][0] != "t [s]") throw Error("CSV: time series must start with 't [s]'");
    sim::TimeSeries ts;
    for (std::size_t c = 1; c < rows[0].size(); ++c) {
        const std::string_view h = rows[0][c];
        const std::size_t open = h.rfind(" [");
        if (open == std::string_view::npos || h.back() != ']') throw Error("CSV: channel header needs 'name [unit]'");
        ts.channels.push_back({std::string(h.substr(0, open)), std::string(h.substr(open + 2, h.size() - open - 3)), {}});
    }
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.size() != rows[0].size()) throw Error("CSV: row " + std::to_string(r) + " has wrong column count");
        ts.t.push_back(parse_num(row[0]));
        for (std::size_t c = 1; c < row.size(); ++c) ts.channels[c - 1].values.push_back(parse_num(row[c]));
    }
    return ts;
}

operating::OperatingPoint read_operating_point_csv(std::string_view text) {
    const auto rows = rows_of(text);
    expect_header(rows[0], {"quantity", "value", "unit"});
    operating::OperatingPoint op;
    const double rad = perunit::kPi / 180.0;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.size() != 3) throw Error("CSV: row " + std::to_string(r) + " has wrong column count");
        const std::string_view q = row[0];
        const double v = parse_num(row[1]);
        if (q == "R_LD") op.R_LD = v;
        else if (q == "V3") op.V3 = v;
        else if (q == "delta12") op.delta12 = v * rad;
        else if (q == "delta13") op.delta13 = v * rad;
        else if (q == "delta23") op.delta23 = v * rad;
        else if (q == "Pe1") op.pe1 = v;
        else if (q == "Pe2") op.pe2 = v;
        else if (q == "iterations") op.iterations = static_cast<int>(v);
        else throw Error("CSV: unknown operating-point quantity '" + std::string(q) + "'");
    }
    return op;
}

std::string rocof_text(const sim::RocofMetrics& metrics) {
    std::string out;
    for (const sim::WindowedRocof& w : metrics.rocof)
        out += "RoCoF " + num(w.window * 1000.0) + " ms, " + fixed(w.value, 3) + " Hz/s\n";
    out += "nadir, " + fixed(metrics.nadir, 3) + " Hz\n";
    out += "t_nadir, " + fixed(metrics.t_nadir, 3) + " s\n";
    return out;
}

std::string rocof_csv(const sim::RocofMetrics& metrics) {
    std::string out = "metric,window_s,value,unit\n";
    for (const sim::WindowedRocof& w : metrics.rocof) out += "rocof," + num(w.window) + "," + num(w.value) + ",Hz/s\n";
    out += "nadir,," + num(metrics.nadir) + ",Hz\n";
    out += "t_nadir,," + num(metrics.t_nadir) + ",s\n";
    return out;
}

sim::RocofMetrics read_rocof_csv(std::string_view text) {
    const auto rows = rows_of(text);
    expect_header(rows[0], {"metric", "window_s", "value", "unit"});
    sim::RocofMetrics m;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.size() != 4) throw Error("CSV: row " + std::to_string(r) + " has wrong column count");
        if (row[0] == "rocof") m.rocof.push_back({parse_num(row[1]), parse_num(row[2])});
        else if (row[0] == "nadir") m.nadir = parse_num(row[2]);
        else if (row[0] == "t_nadir") m.t_nadir = parse_num(row[2]);
        else throw Error("CSV: unknown metric '" + std::string(row[0]) + "'");
    }
    return m;
}

std::string root_locus_svg(const modal::SweepResult& result) {
    constexpr int W = 640, H = 480;
    constexpr double x0 = 60, y0 = 30, x1 = W - 20, y1 = H - 40;
    Axis ax{INFINITY, -INFINITY}, ay{INFINITY, -INFINITY};
    for (const modal::Trajectory& t : result.trajectories)
        for (const modal::TrajectoryPoint& p : t.points) {
            ax.include(p.mode.lambda.real());
            ay.include(p.mode.lambda.imag());
            ay.include(-p.mode.lambda.imag());
        }
    ax.include(0.0);
    ax.finish();
    ay.finish();

    std::string out = svg_header(W, H);
    out += svg_frame(x0, y0, x1, y1, ax, ay);
    const double zx = ax.map(0.0, x0, x1);
    out += "<line x1=\"" + fixed(zx, 1) + "\" y1=\"" + fixed(y0, 1) + "\" x2=\"" + fixed(zx, 1) + "\" y2=\"" +
           fixed(y1, 1) + "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
    out += svg_text((x0 + x1) / 2, H - 8, "Re (1/s), sweep of " + result.parameter, "middle");
    out += svg_text(12, y0 - 10, "Im (rad/s)");
    for (std::size_t t = 0; t < result.trajectories.size(); ++t) {
        const char* color = kPalette[t % kPalette.size()];
        for (double sign : {1.0, -1.0}) {
            std::string pts;
            for (const modal::TrajectoryPoint& p : result.trajectories[t].points) {
                if (!pts.empty()) pts += " ";
                pts += fixed(ax.map(p.mode.lambda.real(), x0, x1), 2) + "," +
                       fixed(ay.map(sign * p.mode.lambda.imag(), y1, y0), 2);
            }
            out += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" points=\"" + pts + "\"/>\n";
            const modal::TrajectoryPoint& first = result.trajectories[t].points.front();
            out += "<circle cx=\"" + fixed(ax.map(first.mode.lambda.real(), x0, x1), 2) + "\" cy=\"" +
                   fixed(ay.map(sign * first.mode.lambda.imag(), y1, y0), 2) + "\" r=\"3\" fill=\"" + color + "\"/>\n";
        }
    }
    out += "</svg>\n";
    return out;
}

std::string timeseries_svg(const sim::TimeSeries& ts) {
    ts.validate();
    constexpr int W = 640;
    constexpr double panel = 140, gap = 30, left = 70, right = W - 20;
    const int H = static_cast<int>(20 + ts.channels.size() * (panel + gap) + 20);
    std::string out = svg_header(W, H);
    Axis at{INFINITY, -INFINITY};
    for (double t : ts.t) at.include(t);
    at.finish();
    const std::size_t stride = std::max<std::size_t>(1, ts.t.size() / 2000);
    for (std::size_t c = 0; c < ts.channels.size(); ++c) {
        const sim::Channel& ch = ts.channels[c];
        const double y0 = 20 + static_cast<double>(c) * (panel + gap);
        const double y1 = y0 + panel;
        Axis ay{INFINITY, -INFINITY};
        for (double v : ch.values) ay.include(v);
        ay.finish();
        out += svg_frame(left, y0, right, y1, at, ay);
        out += svg_text(left + 4, y0 + 12, ch.name + " [" + ch.unit + "]");
        std::string pts;
        for (std::size_t i = 0; i < ts.t.size(); i += stride) {
            if (!pts.empty()) pts += " ";
            pts += fixed(at.map(ts.t[i], left, right), 2) + "," + fixed(ay.map(ch.values[i], y1, y0), 2);
        }
        out += "<polyline fill=\"none\" stroke=\"" + std::string(kPalette[c % kPalette.size()]) + "\" points=\"" + pts +
               "\"/>\n";
    }
    out += svg_text((left + right) / 2, H - 6, "t (s)", "middle");
    out += "</svg>\n";
    return out;
}

}  // namespace gridmodal::report
