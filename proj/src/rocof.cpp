#include "gridmodal/error.hpp"
#include "gridmodal/sim.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gridmodal::sim {

void AggregateSystem::validate() const {
    if (!(H_eq > 0.0)) throw DomainError("aggregate system: H must be positive");
    if (!(R_natural_pu > 0.0)) throw DomainError("aggregate system: natural regulation R must be positive");
    if (primary && (!(primary->R_pu > 0.0) || !(primary->Tg > 0.0))) {
        throw DomainError("aggregate system: primary R and tau must be positive");
    }
    if (secondary && !(secondary->Ki >= 0.0)) throw DomainError("aggregate system: Ki must be non-negative");
}

double RocofMetrics::rocof_at(double window) const {
    for (const WindowedRocof& w : rocof)
        if (std::abs(w.window - window) <= 1e-12 * std::max(1.0, window)) return w.value;
    throw DomainError("RoCoF window " + std::to_string(window) + " s was not evaluated");
}

models::StateSpaceModel aggregate_model(const AggregateSystem& sys) {
    sys.validate();
    using models::StateRole;
    models::StateSpaceModel m;
    m.state_labels = {"df"};
    m.state_roles = {StateRole::Speed};
    if (sys.primary) {
        m.state_labels.push_back("dPm");
        m.state_roles.push_back(StateRole::MechanicalPower);
    }
    if (sys.secondary) {
        m.state_labels.push_back("dPs");
        m.state_roles.push_back(StateRole::Other);
    }
    m.input_labels = {"dPload"};
    m.output_labels = m.state_labels;

    const Eigen::Index n = static_cast<Eigen::Index>(m.state_labels.size());
    const double two_h = 2.0 * sys.H_eq;
    m.A = Eigen::MatrixXd::Zero(n, n);
    m.B = Eigen::MatrixXd::Zero(n, 1);
    m.C = Eigen::MatrixXd::Identity(n, n);
    m.D = Eigen::MatrixXd::Zero(n, 1);

    m.A(0, 0) = -sys.damping() / two_h;
    m.B(0, 0) = -1.0 / two_h;
    Eigen::Index next = 1;
    if (sys.primary) {
        const Eigen::Index pm = next++;
        m.A(0, pm) = 1.0 / two_h;
        m.A(pm, 0) = -1.0 / (sys.primary->R_pu * sys.primary->Tg);
        m.A(pm, pm) = -1.0 / sys.primary->Tg;
    }
    if (sys.secondary) {
        const Eigen::Index ps = next++;
        m.A(0, ps) = 1.0 / two_h;
        m.A(ps, 0) = -sys.secondary->Ki;
    }
    return m;
}

double instantaneous_rocof(double H_eq, double dP, double f0) {
    if (!(H_eq > 0.0)) throw DomainError("instantaneous_rocof: H must be positive");
    return dP * f0 / (2.0 * H_eq);
}

double windowed_rocof(const std::vector<double>& t, const std::vector<double>& f, double window, double t0) {
    if (t.size() != f.size() || t.size() < 2) throw DomainError("windowed_rocof: mismatched or too short series");
    if (!(window > 0.0)) throw DomainError("windowed_rocof: window must be positive");
    const double t1 = t0 + window;
    if (t0 < t.front() || t1 > t.back() * (1.0 + 1e-12)) {
        throw DomainError("windowed_rocof: window " + std::to_string(window) + " s exceeds the simulated span");
    }
    auto sample = [&](double at) {
        const auto it = std::lower_bound(t.begin(), t.end(), at);
        if (it == t.end()) return f.back();
        const std::size_t j = static_cast<std::size_t>(it - t.begin());
        if (j == 0 || *it == at) return f[j];
        const double a = (at - t[j - 1]) / (t[j] - t[j - 1]);
        return f[j - 1] + a * (f[j] - f[j - 1]);
    };
    return std::abs(sample(t1) - sample(t0)) / window;
}

RocofResult rocof_study(const AggregateSystem& sys, double dP, const std::vector<double>& windows, double t_end,
                        double dt, double f0) {
    if (!(f0 > 0.0)) throw DomainError("rocof_study: f0 must be positive");
    const models::StateSpaceModel model = aggregate_model(sys);
    RocofResult out;
    out.series = step_response(model, "dPload", dP, t_end, dt);
    Channel& df = out.series.channel("df");
    for (double& v : df.values) v *= f0;
    df.unit = "Hz";

    for (double w : windows) out.metrics.rocof.push_back({w, windowed_rocof(out.series.t, df.values, w)});

    std::size_t at = 0;
    for (std::size_t i = 0; i < df.values.size(); ++i)
        if (std::abs(df.values[i]) > std::abs(df.values[at])) at = i;
    out.metrics.nadir = df.values[at];
    out.metrics.t_nadir = out.series.t[at];
    return out;
}

}  // namespace gridmodal::sim
