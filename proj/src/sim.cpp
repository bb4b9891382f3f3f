#include "gridmodal/sim.hpp"

#include "gridmodal/error.hpp"
#include "gridmodal/modal.hpp"
#include "gridmodal/perunit.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <string>

namespace gridmodal::sim {

namespace {

std::string unit_for(std::string_view label) {
    if (label.starts_with("dw")) return "rad/s";
    if (label.starts_with("ddelta")) return "rad";
    return "pu";
}

std::size_t step_count(double t_end, double dt) {
    if (!(dt > 0.0) || !(t_end > 0.0)) throw DomainError("simulation: dt and t_end must be positive");
    if (dt > t_end / 10.0 * (1.0 + 1e-12)) throw DomainError("simulation: dt must not exceed t_end / 10");
    return static_cast<std::size_t>(std::floor(t_end / dt + 1e-9));
}

}  // namespace

const Channel& TimeSeries::channel(std::string_view name) const {
    for (const Channel& c : channels)
        if (c.name == name) return c;
    throw ChannelError("time series has no channel '" + std::string(name) + "'");
}

Channel& TimeSeries::channel(std::string_view name) {
    for (Channel& c : channels)
        if (c.name == name) return c;
    throw ChannelError("time series has no channel '" + std::string(name) + "'");
}

bool TimeSeries::has_channel(std::string_view name) const {
    return std::any_of(channels.begin(), channels.end(), [&](const Channel& c) { return c.name == name; });
}

void TimeSeries::validate() const {
    for (const Channel& c : channels)
        if (c.values.size() != t.size()) throw ChannelError("channel '" + c.name + "' length differs from time grid");
    if (t.size() > 1 && !(dt() > 0.0)) throw ChannelError("time grid must be increasing");
}

Eigen::MatrixXd expm(const Eigen::MatrixXd& A) {
    if (A.rows() != A.cols()) throw NumericError("expm: matrix must be square");
    if (!A.allFinite()) throw NumericError("expm: matrix has non-finite entries");
    Eigen::MatrixXd out = A.exp();
    if (!out.allFinite()) throw NumericError("expm: result overflowed");
    return out;
}

Discretization discretize_zoh(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, double dt) {
    const Eigen::Index n = A.rows();
    const Eigen::Index m = B.cols();
    Eigen::MatrixXd aug = Eigen::MatrixXd::Zero(n + m, n + m);
    aug.topLeftCorner(n, n) = A * dt;
    aug.topRightCorner(n, m) = B * dt;
    const Eigen::MatrixXd e = expm(aug);
    return {e.topLeftCorner(n, n), e.topRightCorner(n, m)};
}

TimeSeries step_response(const models::StateSpaceModel& model, std::string_view input, double magnitude,
                         double t_end, double dt) {
    model.validate();
    const auto in = model.input_index(input);
    if (!in) throw ChannelError("model has no input '" + std::string(input) + "'");
    const std::size_t steps = step_count(t_end, dt);

    // Only the driven column matters: u is constant.
    const Eigen::VectorXd bu = model.B.col(*in) * magnitude;
    const Discretization zoh = discretize_zoh(model.A, bu, dt);
    const Eigen::VectorXd gamma = zoh.Gamma.col(0);
    const Eigen::VectorXd feedthrough = model.D.col(*in) * magnitude;

    TimeSeries ts;
    ts.t.resize(steps + 1);
    for (const std::string& label : model.output_labels) {
        ts.channels.push_back({label, unit_for(label), std::vector<double>(steps + 1)});
    }
    Eigen::VectorXd x = Eigen::VectorXd::Zero(model.states());
    for (std::size_t k = 0; k <= steps; ++k) {
        ts.t[k] = static_cast<double>(k) * dt;
        const Eigen::VectorXd y = model.C * x + feedthrough;
        for (Eigen::Index r = 0; r < y.size(); ++r) ts.channels[static_cast<std::size_t>(r)].values[k] = y(r);
        x = zoh.Phi * x + gamma;
    }
    return ts;
}

TimeSeries to_report_units(TimeSeries ts) {
    for (Channel& c : ts.channels) {
        if (c.unit != "rad/s") continue;
        for (double& v : c.values) v = perunit::hz_from_rad(v);
        c.unit = "Hz";
    }
    return ts;
}

Eigen::VectorXd final_value(const models::StateSpaceModel& model, std::string_view input, double magnitude) {
    const auto in = model.input_index(input);
    if (!in) throw ChannelError("model has no input '" + std::string(input) + "'");
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(model.A);
    if (!lu.isInvertible()) throw NumericError("final_value: A is singular (marginally stable model)");
    const Eigen::VectorXd u_col = model.B.col(*in) * magnitude;
    return -model.C * lu.solve(u_col) + model.D.col(*in) * magnitude;
}

double settling_time_95(const std::vector<double>& t, const std::vector<double>& y) {
    if (t.size() != y.size() || t.empty()) throw DomainError("settling_time_95: mismatched or empty series");
    const double final = y.back();
    std::size_t peak = 0;
    double peak_dev = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double dev = std::abs(y[i] - final);
        if (dev > peak_dev) {
            peak_dev = dev;
            peak = i;
        }
    }
    if (peak_dev == 0.0) return 0.0;
    std::size_t last = peak;
    for (std::size_t i = peak; i < y.size(); ++i)
        if (std::abs(y[i] - final) > 0.05 * peak_dev) last = i;
    return t[last] - t[peak];
}

double fit_decay_rate(const std::vector<double>& t, const std::vector<double>& y, double t_from, double t_to) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < t.size() && i < y.size(); ++i) {
        if (t[i] < t_from || t[i] > t_to || y[i] == 0.0) continue;
        const double ly = std::log(std::abs(y[i]));
        sx += t[i];
        sy += ly;
        sxx += t[i] * t[i];
        sxy += t[i] * ly;
        ++n;
    }
    if (n < 2) throw DomainError("fit_decay_rate: fewer than two usable samples in the window");
    const double nn = static_cast<double>(n);
    const double den = nn * sxx - sx * sx;
    if (!(std::abs(den) > 0.0)) throw DomainError("fit_decay_rate: degenerate time window");
    return (nn * sxy - sx * sy) / den;
}

GovernorDemo governor_mode_demo(const SystemCase& symmetric, double Tg1, double Tg2,
                                const GovernorDemoOptions& options) {
    if (symmetric.machines.size() != 2 || symmetric.machines[0].is_gfm() || symmetric.machines[1].is_gfm()) {
        throw DomainError("governor_mode_demo: needs two GC-SG machines");
    }
    if (std::abs(symmetric.network.k - 0.5) > 1e-12) throw DomainError("governor_mode_demo: needs k = 0.5");

    SystemCase sc = symmetric;
    std::get<models::GcsgParams>(sc.machines[0].control).Tg = Tg1;
    std::get<models::GcsgParams>(sc.machines[1].control).Tg = Tg2;
    sc.outputs = {"dw1", "dw2", "dPm1", "dPm2"};
    const Assembly a = assemble(sc);

    const double magnitude =
        options.input == "dRLD" ? options.relative_magnitude * a.op.R_LD : options.relative_magnitude;
    GovernorDemo demo;
    demo.series = to_report_units(step_response(a.model, options.input, magnitude, options.t_end, options.dt));

    const std::vector<double>& pm1 = demo.series.channel("dPm1").values;
    const std::vector<double>& pm2 = demo.series.channel("dPm2").values;
    Channel diff{"dPm_diff", "pu", std::vector<double>(pm1.size())};
    for (std::size_t i = 0; i < pm1.size(); ++i) diff.values[i] = pm1[i] - pm2[i];
    demo.series.channels.push_back(diff);

    demo.settling_time = settling_time_95(demo.series.t, diff.values);
    if (demo.settling_time > 0.0) {
        const auto peak = std::max_element(diff.values.begin(), diff.values.end(),
                                           [](double a1, double b1) { return std::abs(a1) < std::abs(b1); });
        const double t_peak = demo.series.t[static_cast<std::size_t>(peak - diff.values.begin())];
        demo.fitted_rate = fit_decay_rate(demo.series.t, diff.values, t_peak, t_peak + demo.settling_time);
    }

    const modal::ModeSet modes = modal::analyze(a.model);
    if (const modal::Mode* gov = modes.first(modal::ModeLabel::Governor)) demo.governor_eigenvalue = gov->lambda.real();
    return demo;
}

}  // namespace gridmodal::sim
