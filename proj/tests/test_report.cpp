#include <doctest.h>

#include "gridmodal/error.hpp"
#include "gridmodal/modal.hpp"
#include "gridmodal/report.hpp"
#include "gridmodal/scenario.hpp"
#include "gridmodal/sim.hpp"

#include <cmath>

using namespace gridmodal::report;
using gridmodal::modal::Mode;
using gridmodal::modal::ModeLabel;

namespace {

gridmodal::SystemCase fixture(const std::string& name) { return *gridmodal::scenario::load_scenario(name).system; }

bool close6(double a, double b) { return std::abs(a - b) <= 5e-6 * std::max(std::abs(a), std::abs(b)) + 1e-300; }

}  // namespace

TEST_SUITE("report") {

TEST_CASE("number formatting") {
    CHECK(num(0.0) == "0");
    CHECK(num(-0.0) == "0");
    CHECK(num(-1e-300 * 1e-300) == "0");
    CHECK(num(0.933012701892) == "0.933013");
    CHECK(num(1234567.0) == "1.23457e+06");
    CHECK(num(-2.5) == "-2.5");
    CHECK(num(NAN) == "nan");
    CHECK(num(INFINITY) == "inf");
    CHECK(num(-INFINITY) == "-inf");
    CHECK(fixed(-0.0001, 3) == "0.000");
    CHECK(fixed(-0.0006, 3) == "-0.001");
    CHECK(fixed(15.0, 2) == "15.00");
}

TEST_CASE("eigenvalue text") {
    Mode pair;
    pair.lambda = {-0.11777, 12.47641};
    CHECK(eigenvalue_text(pair) == "-0.118 ± 12.476j");
    Mode real;
    real.is_real = true;
    real.lambda = {-3.76572, 0.0};
    CHECK(eigenvalue_text(real) == "-3.766");
    CHECK(eigenvalue_text(real, 1) == "-3.8");
}

TEST_CASE("mode table rows") {
    const auto modes = gridmodal::modal::analyze(gridmodal::assemble(fixture("case1a")).model);
    const std::string t = mode_table(modes);
    CHECK(t.rfind("Mode, Eigenvalue, Freq (Hz), zeta\n", 0) == 0);
    CHECK(t.find("Swing, -0.118 ± 12.476j, 1.986, 0.009\n") != std::string::npos);
    CHECK(t.find("Governor, -3.766, ---, ---\n") != std::string::npos);
    CHECK(t.find("Swing") < t.find("TurbineGovernor"));
    CHECK(t.find("TurbineGovernor") < t.find("Governor, "));
}

TEST_CASE("operating point text and CSV") {
    const auto a = gridmodal::assemble(fixture("case1a"));
    const std::string t = operating_point_text(a.op, a.net);
    CHECK(t.find("R_LD, 0.9330 pu") != std::string::npos);
    CHECK(t.find("|V3|, 0.9659 pu") != std::string::npos);
    CHECK(t.find("delta13, 15.00 deg") != std::string::npos);
    const auto back = read_operating_point_csv(operating_point_csv(a.op));
    CHECK(close6(back.R_LD, a.op.R_LD));
    CHECK(close6(back.V3, a.op.V3));
    CHECK(close6(back.delta13, a.op.delta13));
    CHECK(back.delta12 == 0.0);
    CHECK(back.iterations == a.op.iterations);
}

TEST_CASE("modes CSV round trip") {
    for (const char* name : {"case1a", "case1b", "case2d"}) {
        const auto modes = gridmodal::modal::analyze(gridmodal::assemble(fixture(name)).model);
        const auto back = read_modes_csv(modes_csv(modes));
        REQUIRE(back.modes.size() == modes.modes.size());
        CHECK(back.state_labels == modes.state_labels);
        for (std::size_t i = 0; i < modes.modes.size(); ++i) {
            const Mode& a = modes.modes[i];
            const Mode& b = back.modes[i];
            CHECK(b.label == a.label);
            CHECK(close6(b.lambda.real(), a.lambda.real()));
            CHECK(close6(b.lambda.imag(), a.lambda.imag()));
            CHECK(close6(b.zeta, a.zeta));
            CHECK(b.is_real == a.is_real);
            for (std::size_t k = 0; k < a.participation.size(); ++k) {
                if (a.participation[k] < 1e-12) CHECK(b.participation[k] == 0.0);
                else CHECK(close6(b.participation[k], a.participation[k]));
            }
        }
    }
}

TEST_CASE("sweep CSV round trip") {
    const auto grid = gridmodal::modal::linspace(0.5, 4.0, 8);
    std::vector<double> with_failure = grid;
    with_failure.push_back(-1.0);
    const auto r = gridmodal::modal::sweep(fixture("case1b"), "H1", with_failure);
    const std::string csv = sweep_csv(r);
    CHECK(csv.rfind("parameter,point,value,trajectory,re,im,freq_hz,zeta,label,error\n", 0) == 0);
    const auto back = read_sweep_csv(csv);
    CHECK(back.parameter == "H1");
    REQUIRE(back.points.size() == with_failure.size());
    CHECK_FALSE(back.points.back().error.empty());
    CHECK(back.points.back().error.find(',') == std::string::npos);
    REQUIRE(back.trajectories.size() == r.trajectories.size());
    for (std::size_t t = 0; t < r.trajectories.size(); ++t) {
        REQUIRE(back.trajectories[t].points.size() == r.trajectories[t].points.size());
        CHECK(back.trajectories[t].label == r.trajectories[t].label);
        for (std::size_t p = 0; p < r.trajectories[t].points.size(); ++p) {
            CHECK(back.trajectories[t].points[p].grid_index == r.trajectories[t].points[p].grid_index);
            CHECK(close6(back.trajectories[t].points[p].mode.zeta, r.trajectories[t].points[p].mode.zeta));
        }
    }
}

TEST_CASE("time series CSV round trip") {
    const auto a = gridmodal::assemble(fixture("case2a"));
    const auto ts = gridmodal::sim::to_report_units(
        gridmodal::sim::step_response(a.model, "dRLD", -0.01 * a.op.R_LD, 1.0, 0.01));
    const std::string csv = timeseries_csv(ts);
    CHECK(csv.rfind("t [s],dw1 [Hz],dw2 [Hz],dPe1 [pu]\n", 0) == 0);
    const auto back = read_timeseries_csv(csv);
    REQUIRE(back.size() == ts.size());
    REQUIRE(back.channels.size() == ts.channels.size());
    CHECK(back.channels[0].unit == "Hz");
    for (std::size_t c = 0; c < ts.channels.size(); ++c)
        for (std::size_t i = 0; i < ts.size(); ++i) CHECK(close6(back.channels[c].values[i], ts.channels[c].values[i]));
    CHECK(back.t[100] == doctest::Approx(1.0));
}

TEST_CASE("frequency study text and CSV") {
    const auto sc = gridmodal::scenario::load_scenario("lowHlowR");
    const auto r = gridmodal::sim::rocof_study(sc.rocof->system, 0.25, {0.05, 0.5}, 20.0, 1e-3);
    const std::string t = rocof_text(r.metrics);
    CHECK(t.find("RoCoF 50 ms, 4.589 Hz/s\n") != std::string::npos);
    CHECK(t.find("RoCoF 500 ms, 0.500 Hz/s\n") != std::string::npos);
    CHECK(t.find("nadir, -0.250 Hz\n") != std::string::npos);
    const auto back = read_rocof_csv(rocof_csv(r.metrics));
    REQUIRE(back.rocof.size() == 2);
    CHECK(close6(back.rocof_at(0.05), r.metrics.rocof_at(0.05)));
    CHECK(close6(back.nadir, r.metrics.nadir));
    CHECK(close6(back.t_nadir, r.metrics.t_nadir));
}

TEST_CASE("output is deterministic") {
    const auto m1 = gridmodal::modal::analyze(gridmodal::assemble(fixture("case1c")).model);
    const auto m2 = gridmodal::modal::analyze(gridmodal::assemble(fixture("case1c")).model);
    CHECK(modes_csv(m1) == modes_csv(m2));
    CHECK(mode_table(m1) == mode_table(m2));
}

TEST_CASE("SVG plots are well formed") {
    const auto r = gridmodal::modal::sweep(fixture("case1b"), "H1", gridmodal::modal::linspace(0.1, 4.0, 10));
    const std::string svg = root_locus_svg(r);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("nan") == std::string::npos);

    const auto a = gridmodal::assemble(fixture("case2a"));
    const auto ts = gridmodal::sim::step_response(a.model, "dRLD", -0.01, 10.0, 1e-3);
    const std::string p = timeseries_svg(ts);
    CHECK(p.rfind("<svg", 0) == 0);
    CHECK(p.find("</svg>") != std::string::npos);
    CHECK(p.size() < 400000);
}

TEST_CASE("malformed CSV input") {
    CHECK_THROWS_AS(read_modes_csv("label,re\nSwing,abc\n"), gridmodal::Error);
    CHECK_THROWS_AS(read_timeseries_csv(""), gridmodal::Error);
    CHECK_THROWS_AS(read_rocof_csv("metric,window_s,value,unit\nrocof,x,1,Hz/s\n"), gridmodal::Error);
}

}
