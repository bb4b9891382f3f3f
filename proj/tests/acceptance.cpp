// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "support/properties.hpp"

#include "gridmodal/error.hpp"
#include "gridmodal/modal.hpp"
#include "gridmodal/models.hpp"
#include "gridmodal/perunit.hpp"
#include "gridmodal/scenario.hpp"
#include "gridmodal/sim.hpp"
#include "gridmodal/system.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace gridmodal;
using modal::Complex;
using modal::Mode;
using modal::ModeLabel;
using modal::ModeSet;
using perunit::kPi;

// Tolerances.
constexpr double kOpPu = 0.0005;
constexpr double kOpDeg = 0.05;
constexpr double kEigRel = 0.01;
constexpr double kColumnAbs = 0.01;
constexpr double kRealPairRel = 0.02;
constexpr double kSwingZeta2a = 0.001, kSwingZeta2aTol = 0.002;
constexpr double kSwingFreq2a = 1.625, kSwingFreq2aRel = 0.01;
constexpr double kTableRTol = 0.0005;   // printed with three decimals
constexpr double kTableFnTol = 0.005;   // printed with two decimals
constexpr double kPredictionRel = 0.05;
constexpr double kSwingAnchorRel = 0.02;
constexpr double kGovernorRel = 0.005;
constexpr double kSettlingRel = 0.15;
constexpr double kRocofAnchorRel = 0.03;
constexpr double kNadirAnchorRel = 0.02;
constexpr double kConventionalWideRel = 0.10;
constexpr int kPropertyTrials = 1000;

class Check {
public:
    void expect(bool ok, const std::string& what) {
        ++count_;
        if (!ok) failures_.push_back(what);
    }
    void near(double got, double want, double tol, const std::string& what) {
        std::ostringstream os;
        os << what << " = " << got << " (want " << want << " +- " << tol << ")";
        expect(std::abs(got - want) <= tol, os.str());
    }
    void rel(double got, double want, double tol, const std::string& what) {
        near(got, want, tol * std::abs(want), what);
    }
    void note(const std::string& n) { notes_.push_back(n); }

    bool passed() const { return failures_.empty() && count_ > 0; }
    std::string detail() const {
        std::string out = std::to_string(count_ - failures_.size()) + "/" + std::to_string(count_) + " checks";
        for (const auto& n : notes_) out += "; " + n;
        for (const auto& f : failures_) out += "; FAILED " + f;
        return out;
    }

private:
    std::size_t count_ = 0;
    std::vector<std::string> failures_;
    std::vector<std::string> notes_;
};

SystemCase fixture(const std::string& name) { return *scenario::load_scenario(name).system; }

ModeSet modes_of(const SystemCase& sc) { return modal::analyze(assemble(sc).model); }

SystemCase symmetric(double H, double scr, double Tg = 0.25) {
    SystemCase sc;
    sc.network.scr = scr;
    sc.machines = {models::MachineParams::gcsg(0.5, H, 0.01, 0.05, Tg),
                   models::MachineParams::gcsg(0.5, H, 0.01, 0.05, Tg)};
    sc.dispatch = {0.5, 0.5};
    return sc;
}

const Mode* nearest(const ModeSet& s, ModeLabel label, Complex target) {
    const Mode* best = nullptr;
    for (const Mode* m : s.all(label))
        if (!best || std::abs(m->lambda - target) < std::abs(best->lambda - target)) best = m;
    return best;
}

struct Row {
    ModeLabel label;
    double re, im, freq, zeta;  // freq/zeta < 0: column not printed
};

void table_row(Check& c, const std::string& tag, const ModeSet& s, const Row& r, bool freq_is_magnitude,
               bool check_re = true) {
    const std::string name = tag + " " + std::string(modal::to_string(r.label));
    const Mode* m = nearest(s, r.label, {r.re, r.im});
    c.expect(m != nullptr, name + " present");
    if (!m) return;
    if (check_re) c.rel(m->lambda.real(), r.re, kEigRel, name + " Re");
    c.near(m->lambda.imag(), r.im, kEigRel * std::abs(r.im), name + " Im");
    if (r.freq >= 0.0) {
        const double f = freq_is_magnitude ? std::abs(m->lambda) / (2.0 * kPi) : m->freq_hz;
        c.near(f, r.freq, kColumnAbs, name + " Freq");
    }
    if (r.zeta >= 0.0) c.near(m->zeta, r.zeta, kColumnAbs, name + " zeta");
}

Check criterion1() {
    Check c;
    const auto a = assemble(fixture("case1a"));
    c.near(a.op.V3, 0.9659, kOpPu, "|V3|");
    c.near(a.op.R_LD, 0.9330, kOpPu, "R_LD");
    c.near(perunit::deg_from_rad(a.op.delta13), 15.0, kOpDeg, "delta13");
    c.near(perunit::deg_from_rad(a.op.delta23), 15.0, kOpDeg, "delta23");
    return c;
}

Check criterion2() {
    Check c;
    const ModeSet a = modes_of(fixture("case1a"));
    const ModeSet b = modes_of(fixture("case1b"));
    const ModeSet d = modes_of(fixture("case1c"));
    c.expect(a.eigenvalue_count() == 5, "1a has 5 eigenvalues");
    c.expect(b.eigenvalue_count() == 4, "1b has 4 eigenvalues");
    c.expect(d.eigenvalue_count() == 4, "1c has 4 eigenvalues");
    table_row(c, "1a", a, {ModeLabel::Swing, -0.118, 12.476, 1.986, 0.009}, false);
    table_row(c, "1b", b, {ModeLabel::Swing, -0.645, 12.233, 1.947, 0.053}, false);
    table_row(c, "1c", d, {ModeLabel::Swing, -2.042, 10.711, 1.705, 0.187}, false);
    table_row(c, "1a", a, {ModeLabel::TurbineGovernor, -2.001, 2.450, 0.390, 0.632}, false);
    table_row(c, "1b", b, {ModeLabel::TurbineGovernor, -2.605, 1.727, 0.275, 0.833}, false);
    table_row(c, "1c", d, {ModeLabel::TurbineGovernor, -7.461, 0.0, -1, -1}, false);
    table_row(c, "1c", d, {ModeLabel::TurbineGovernor, -4.957, 0.0, -1, -1}, false);
    table_row(c, "1a", a, {ModeLabel::Governor, -3.766, 0.0, -1, -1}, false);
    c.expect(b.all(ModeLabel::Governor).empty(), "1b has no governor mode");
    c.expect(d.all(ModeLabel::Governor).empty(), "1c has no governor mode");
    c.expect(a.all(ModeLabel::Swing).size() == 1 && b.all(ModeLabel::Swing).size() == 1 &&
                 d.all(ModeLabel::Swing).size() == 1,
             "one swing mode per case");
    return c;
}

Check criterion3() {
    Check c;
    const ModeSet a = modes_of(fixture("case2a"));
    const ModeSet b = modes_of(fixture("case2b"));
    const ModeSet d = modes_of(fixture("case2d"));
    c.expect(a.eigenvalue_count() == 5, "2a has 5 eigenvalues");
    c.expect(b.eigenvalue_count() == 4, "2b has 4 eigenvalues");
    c.expect(d.eigenvalue_count() == 4, "2d has 4 eigenvalues");

    const Mode* sw = a.first(ModeLabel::Swing);
    c.expect(sw != nullptr, "2a Swing present");
    if (sw) {
        c.near(sw->zeta, kSwingZeta2a, kSwingZeta2aTol, "2a Swing zeta");
        c.rel(std::abs(sw->lambda) / (2.0 * kPi), kSwingFreq2a, kSwingFreq2aRel, "2a Swing Freq");
        c.rel(sw->lambda.imag(), 10.209, kEigRel, "2a Swing Im");
        std::ostringstream os;
        os << "2a Swing Re " << sw->lambda.real() << " (printed -0.126 disagrees with its zeta 0.001; not checked)";
        c.note(os.str());
    }
    table_row(c, "2b", b, {ModeLabel::Swing, -0.675, 10.044, 1.602, 0.067}, true);
    c.expect(d.all(ModeLabel::Swing).empty(), "2d has no oscillatory swing mode");
    const auto reals = d.all(ModeLabel::Real);
    c.expect(reals.size() == 2, "2d swing pair is real");
    if (reals.size() == 2) {
        c.rel(reals[0]->lambda.real(), -476.3, kRealPairRel, "2d real 1");
        c.rel(reals[1]->lambda.real(), -21.5, kRealPairRel, "2d real 2");
    }
    table_row(c, "2a", a, {ModeLabel::TurbineGovernor, -0.501, 1.500, 0.252, 0.316}, true);
    table_row(c, "2b", b, {ModeLabel::TurbineGovernor, -1.075, 1.164, 0.252, 0.679}, true);
    table_row(c, "2d", d, {ModeLabel::TurbineGovernor, -1.600, 1.552, 0.355, 0.718}, true);
    table_row(c, "2a", a, {ModeLabel::Governor, -0.976, 0.0, -1, -1}, true);
    c.expect(b.all(ModeLabel::Governor).empty(), "2b has no governor mode");
    c.expect(d.all(ModeLabel::Governor).empty(), "2d has no governor mode");
    return c;
}

Check criterion4() {
    struct TableRow {
        const char* type;
        double tg_lo, tg_hi, h_lo, h_hi, r_lo, r_hi, fn_lo, fn_hi;
    };
    const TableRow rows[] = {
        {"Hydro", 0.2, 0.5, 3.0, 9.0, 0.022, 0.167, 0.23, 0.56},
        {"Steam", 0.2, 0.3, 4.0, 10.0, 0.020, 0.075, 0.38, 0.56},
        {"Gas/Genset", 0.1, 0.3, 5.0, 9.0, 0.011, 0.060, 0.38, 1.13},
        {"Nuclear", 0.2, 0.4, 5.0, 8.0, 0.025, 0.080, 0.28, 0.56},
        {"Coal-fired", 0.2, 0.3, 4.0, 8.0, 0.025, 0.075, 0.38, 0.56},
    };
    Check c;
    for (const TableRow& r : rows) {
        double rmin = INFINITY, rmax = 0.0, fmin = INFINITY, fmax = 0.0;
        for (double tg : {r.tg_lo, r.tg_hi})
            for (double h : {r.h_lo, r.h_hi}) {
                const double R = tg / h;
                const auto s = models::turbine_governor_summary(h, R, tg);
                c.near(s.zeta, 1.0 / std::sqrt(2.0), 1e-12, std::string(r.type) + " zeta at R = Tg/H");
                rmin = std::min(rmin, R);
                rmax = std::max(rmax, R);
                fmin = std::min(fmin, s.fn);
                fmax = std::max(fmax, s.fn);
            }
        c.near(rmin, r.r_lo, kTableRTol, std::string(r.type) + " R min");
        c.near(rmax, r.r_hi, kTableRTol, std::string(r.type) + " R max");
        c.near(fmin, r.fn_lo, kTableFnTol, std::string(r.type) + " fn min");
        c.near(fmax, r.fn_hi, kTableFnTol, std::string(r.type) + " fn max");
    }
    return c;
}

Check criterion5() {
    Check c;
    const SystemCase base = symmetric(1.0, 4.0);
    const double M1 = perunit::momentum(1.0, 0.5, base.base);
    const auto grid = modal::linspace(4.0, 10.0, 25);
    const modal::SweepResult r = modal::sweep(base, "SCR", grid);
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const Mode* sw = r.points[i].modes ? r.points[i].modes->first(ModeLabel::Swing) : nullptr;
        c.expect(sw != nullptr, "swing mode at SCR " + std::to_string(grid[i]));
        if (!sw) continue;
        const double fn = modal::swing_mode_prediction(M1, M1, 1.0, perunit::x_from_scr(grid[i], 0.5));
        worst = std::max(worst, std::abs(sw->freq_hz - fn) / fn);
        c.rel(sw->freq_hz, fn, kPredictionRel, "swing vs prediction at SCR " + std::to_string(grid[i]));
    }
    std::ostringstream os;
    os << "worst deviation from prediction " << worst * 100.0 << "%";
    c.note(os.str());

    const ModeSet s1 = modes_of(symmetric(1.0, 8.0));
    const ModeSet s4 = modes_of(symmetric(4.0, 8.0));
    const Mode* h1 = s1.first(ModeLabel::Swing);
    const Mode* h4 = s4.first(ModeLabel::Swing);
    c.expect(h1 && h4, "swing modes at SCR 8");
    if (h1) c.rel(h1->freq_hz, 5.686, kSwingAnchorRel, "H=1 SCR=8 swing freq");
    if (h4) c.rel(h4->freq_hz, 5.686 / std::sqrt(4.0), kSwingAnchorRel, "H=4 SCR=8 swing freq");
    return c;
}

Check criterion6() {
    Check c;
    const ModeSet stiff = modes_of(symmetric(4.0, 1e4));
    const Mode* gov = stiff.first(ModeLabel::Governor);
    c.expect(gov != nullptr, "governor mode at SCR 1e4");
    if (gov) c.rel(gov->lambda.real(), -4.0, kGovernorRel, "governor eigenvalue at SCR 1e4");
    SystemCase demo = symmetric(4.0, 4.0);
    const sim::GovernorDemo d = sim::governor_mode_demo(demo, 0.5, 1.5);
    c.rel(d.settling_time, 3.0, kSettlingRel, "differential settling time");
    return c;
}

Check criterion7() {
    Check c;
    const auto low = scenario::load_scenario("rocof-lowH");
    const auto conv = scenario::load_scenario("rocof-conventional");
    const auto& ls = *low.rocof;
    const auto& cs = *conv.rocof;
    const sim::RocofMetrics l = sim::rocof_study(ls.system, ls.dP, {0.05, 0.5}, ls.t_end, ls.dt, low.base.f0()).metrics;
    const sim::RocofMetrics v = sim::rocof_study(cs.system, cs.dP, {0.05, 0.5}, cs.t_end, cs.dt, conv.base.f0()).metrics;
    c.rel(l.nadir, -0.25, kNadirAnchorRel, "low-H nadir");
    c.rel(l.rocof_at(0.05), 4.6, kRocofAnchorRel, "low-H RoCoF 50 ms");
    c.rel(l.rocof_at(0.5), 0.5, kRocofAnchorRel, "low-H RoCoF 500 ms");
    c.rel(v.rocof_at(0.05), 1.56, kRocofAnchorRel, "conventional RoCoF 50 ms");
    c.rel(v.nadir, -0.88, kConventionalWideRel, "conventional nadir");
    c.rel(v.rocof_at(0.5), 1.32, kConventionalWideRel, "conventional RoCoF 500 ms");
    std::ostringstream os;
    os << "conventional 50 ms " << v.rocof_at(0.05) << ", 500 ms " << v.rocof_at(0.5) << ", nadir " << v.nadir;
    c.note(os.str());
    return c;
}

Check criterion8() {
    Check c;
    for (const props::Result& r : props::all(kPropertyTrials)) {
        std::ostringstream os;
        os << r.name << " (" << r.trials << " trials, worst " << r.worst << ", bound " << r.tolerance << ")";
        if (!r.passed() && !r.first_failure.empty()) os << " first failure: " << r.first_failure;
        c.expect(r.passed() && r.trials == kPropertyTrials, os.str());
    }
    return c;
}

Check criterion9() {
    Check c;
    const auto down = modal::linspace(4.0, 0.1, 40);
    const modal::SweepResult b = modal::sweep(fixture("case1b"), "H1", down);
    double prev = -INFINITY;
    bool increasing = true;
    for (const auto& p : b.points) {
        const Mode* sw = p.modes ? p.modes->first(ModeLabel::Swing) : nullptr;
        if (!sw || !(sw->zeta > prev)) increasing = false;
        if (sw) prev = sw->zeta;
    }
    c.expect(increasing, "1b swing zeta strictly increasing as H1 falls from 4 to 0.1 s");

    const auto sw = *scenario::load_scenario("case1a").sweep;
    const modal::SweepResult a = modal::sweep(fixture("case1a"), "H1", modal::linspace(sw.from, sw.to, sw.points));
    double worst = 0.0;
    bool all_present = true;
    for (const auto& p : a.points) {
        const Mode* m = p.modes ? p.modes->first(ModeLabel::Swing) : nullptr;
        if (!m) all_present = false;
        else worst = std::max(worst, m->zeta);
    }
    c.expect(all_present, "1a swing mode at every point");
    std::ostringstream os;
    os << "1a max swing zeta " << worst;
    c.expect(worst < 0.02, os.str());
    c.note(os.str());
    return c;
}

}  // namespace

int main() {
    const std::vector<std::function<Check()>> criteria = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                                          criterion6, criterion7, criterion8, criterion9};
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Check c;
        try {
            c = criteria[i]();
        } catch (const std::exception& e) {
            c.expect(false, std::string("exception: ") + e.what());
        }
        if (!c.passed()) ++failed;
        std::printf("%s criterion %zu: %s\n", c.passed() ? "PASS" : "FAIL", i + 1, c.detail().c_str());
    }
    return failed == 0 ? 0 : 1;
}
