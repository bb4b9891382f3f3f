#include "gridmodal/models.hpp"

#include "gridmodal/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace gridmodal::models {

namespace {

std::optional<Eigen::Index> find_label(const std::vector<std::string>& labels, std::string_view label) {
    const auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) return std::nullopt;
    return static_cast<Eigen::Index>(it - labels.begin());
}

// Swing/governor constants of one machine in the requested power units.
struct Physical {
    double M;
    double D;
    double R;   // 0 for GFM (no governor)
    double Tg;  // 0 for GFM
};

Physical physical(const MachineParams& m, const perunit::BaseSystem& base) {
    m.validate();
    Physical out{};
    if (const auto* g = std::get_if<GcsgParams>(&m.control)) {
        const perunit::MachineSi si = perunit::to_si({m.S_pu, g->H, g->D_pu, g->R_pu, g->Tg}, base);
        out = {si.M, si.D, si.R, si.Tg};
    } else {
        const auto& f = std::get<GfmParams>(m.control);
        out.M = perunit::momentum(f.H_virtual, m.S_pu, base);
        out.D = perunit::damping_si(f.D_virtual_pu(), m.S_pu, base);
    }
    if (!(out.M > 0.0)) throw AssemblyError("machine angular momentum must be positive (H > 0)");
    return out;
}

perunit::BaseSystem assembly_base(const perunit::BaseSystem& base, PowerUnits units) {
    return units == PowerUnits::SystemPu ? base.with_sbase(1.0) : base;
}

}  // namespace

MachineParams MachineParams::gcsg(double S_pu, double H, double D_pu, double R_pu, double Tg) {
    return MachineParams{S_pu, GcsgParams{H, D_pu, R_pu, Tg}};
}

MachineParams MachineParams::gfm(double S_pu, double H_virtual, double R_droop_pu) {
    return MachineParams{S_pu, GfmParams{H_virtual, R_droop_pu}};
}

MachineKind MachineParams::kind() const {
    return std::holds_alternative<GcsgParams>(control) ? MachineKind::Gcsg : MachineKind::Gfm;
}

double MachineParams::inertia() const {
    if (const auto* g = std::get_if<GcsgParams>(&control)) return g->H;
    return std::get<GfmParams>(control).H_virtual;
}

void MachineParams::validate() const {
    if (!(S_pu > 0.0 && S_pu <= 1.0)) throw DomainError("machine: S_pu must lie in (0, 1]");
    if (const auto* g = std::get_if<GcsgParams>(&control)) {
        perunit::MachineRating{S_pu, g->H, g->D_pu, g->R_pu, g->Tg}.validate_gcsg();
    } else {
        const auto& f = std::get<GfmParams>(control);
        if (!(f.R_droop_pu > 0.0)) throw DomainError("GFM: droop R must be positive");
        if (!(f.H_virtual >= 0.0)) throw DomainError("GFM: H_virtual must be non-negative");
    }
}

void StateSpaceModel::validate() const {
    const Eigen::Index n = A.rows();
    const Eigen::Index m = B.cols();
    const Eigen::Index p = C.rows();
    if (A.cols() != n) throw AssemblyError("A must be square");
    if (B.rows() != n) throw AssemblyError("B must have as many rows as A");
    if (C.cols() != n) throw AssemblyError("C must have as many columns as A");
    if (D.rows() != p || D.cols() != m) throw AssemblyError("D must be outputs x inputs");
    if (static_cast<Eigen::Index>(state_labels.size()) != n ||
        static_cast<Eigen::Index>(state_roles.size()) != n)
        throw AssemblyError("state label/role count does not match A");
    if (static_cast<Eigen::Index>(input_labels.size()) != m) throw AssemblyError("input label count does not match B");
    if (static_cast<Eigen::Index>(output_labels.size()) != p) throw AssemblyError("output label count does not match C");
    if (!A.allFinite() || !B.allFinite() || !C.allFinite() || !D.allFinite())
        throw AssemblyError("state-space matrices contain non-finite entries");
}

std::optional<Eigen::Index> StateSpaceModel::state_index(std::string_view label) const {
    return find_label(state_labels, label);
}

std::optional<Eigen::Index> StateSpaceModel::input_index(std::string_view label) const {
    return find_label(input_labels, label);
}

std::optional<Eigen::Index> StateSpaceModel::output_index(std::string_view label) const {
    return find_label(output_labels, label);
}

SecondOrderSummary turbine_governor_summary(double H, double R_pu, double Tg) {
    if (!(H > 0.0 && R_pu > 0.0 && Tg > 0.0)) throw DomainError("turbine_governor_summary: inputs must be positive");
    SecondOrderSummary s;
    s.fn = std::sqrt(1.0 / (2.0 * H * R_pu * Tg)) / (2.0 * perunit::kPi);
    s.zeta = std::sqrt(H * R_pu / (2.0 * Tg));
    s.critically_damped = R_pu > Tg / H;
    return s;
}

VirtualInertia gfm_equivalence(double Tf, double R_droop_pu) {
    if (!(Tf > 0.0 && R_droop_pu > 0.0)) throw DomainError("gfm_equivalence: inputs must be positive");
    return {Tf / R_droop_pu, 1.0 / R_droop_pu};
}

double filter_time_constant(double H_virtual, double R_droop_pu) {
    return 2.0 * H_virtual * R_droop_pu;
}

StateSpaceModel build_single_gcsg(const MachineParams& machine, double d1, const perunit::BaseSystem& base) {
    if (machine.is_gfm()) throw AssemblyError("build_single_gcsg: machine is a GFM");
    const Physical ph = physical(machine, base.with_sbase(1.0));

    StateSpaceModel s;
    s.A.resize(2, 2);
    s.A << -ph.D / ph.M, 1.0 / ph.M,
           -1.0 / (ph.R * ph.Tg), -1.0 / ph.Tg;
    s.B = Eigen::MatrixXd::Zero(2, 3);
    s.B(1, 0) = 1.0 / ph.Tg;
    s.B(1, 1) = 1.0 / (ph.R * ph.Tg);
    s.B(0, 2) = -d1 / ph.M;
    s.C = Eigen::MatrixXd::Zero(2, 2);
    s.C(0, 0) = 1.0;
    s.D = Eigen::MatrixXd::Zero(2, 3);
    s.D(1, 2) = d1;
    s.state_labels = {"dw1", "dPm1"};
    s.state_roles = {StateRole::Speed, StateRole::MechanicalPower};
    s.input_labels = {"dPref1", "dwref1", "dRLD"};
    s.output_labels = {"dw1", "dPe1"};
    s.validate();
    return s;
}

StateSpaceModel build_single_gfm(const MachineParams& machine, double d1, const perunit::BaseSystem& base) {
    if (!machine.is_gfm()) throw AssemblyError("build_single_gfm: machine is not a GFM");
    const Physical ph = physical(machine, base.with_sbase(1.0));

    StateSpaceModel s;
    s.A = Eigen::MatrixXd::Constant(1, 1, -ph.D / ph.M);
    s.B = Eigen::MatrixXd::Zero(1, 3);
    s.B(0, 0) = 1.0 / ph.M;
    s.B(0, 1) = ph.D / ph.M;
    s.B(0, 2) = -d1 / ph.M;
    s.C = Eigen::MatrixXd::Zero(2, 1);
    s.C(0, 0) = 1.0;
    s.D = Eigen::MatrixXd::Zero(2, 3);
    s.D(1, 2) = d1;
    s.state_labels = {"dw1"};
    s.state_roles = {StateRole::Speed};
    s.input_labels = {"dPref1", "dwref1", "dRLD"};
    s.output_labels = {"dw1", "dPe1"};
    s.validate();
    return s;
}

StateSpaceModel build_two_machine(const MachineParams& m1, const MachineParams& m2,
                                  const operating::LinCoeffs& lin, const perunit::BaseSystem& base,
                                  const AssemblyOptions& options) {
    const perunit::BaseSystem ab = assembly_base(base, options.units);
    const double power_scale = ab.sbase();
    const std::array<Physical, 2> ph{physical(m1, ab), physical(m2, ab)};
    const std::array<bool, 2> has_gov{!m1.is_gfm(), !m2.is_gfm()};
    const std::array<double, 2> K{lin.Klin1 * power_scale, lin.Klin2 * power_scale};
    const std::array<double, 2> d{lin.d1 * power_scale, lin.d2 * power_scale};

    StateSpaceModel s;
    s.state_labels.push_back("ddelta12");
    s.state_roles.push_back(StateRole::Angle);
    std::array<Eigen::Index, 2> w{};
    std::array<Eigen::Index, 2> pm{-1, -1};
    for (int i = 0; i < 2; ++i) {
        const std::string idx = std::to_string(i + 1);
        w[i] = static_cast<Eigen::Index>(s.state_labels.size());
        s.state_labels.push_back("dw" + idx);
        s.state_roles.push_back(StateRole::Speed);
        if (has_gov[i]) {
            pm[i] = static_cast<Eigen::Index>(s.state_labels.size());
            s.state_labels.push_back("dPm" + idx);
            s.state_roles.push_back(StateRole::MechanicalPower);
        }
    }
    s.input_labels = {"dPref1", "dPref2", "dwref1", "dwref2", "dRLD"};
    const Eigen::Index n = static_cast<Eigen::Index>(s.state_labels.size());
    constexpr Eigen::Index kLoadInput = 4;

    s.A = Eigen::MatrixXd::Zero(n, n);
    s.B = Eigen::MatrixXd::Zero(n, 5);
    s.A(0, w[0]) = 1.0;
    s.A(0, w[1]) = -1.0;
    for (int i = 0; i < 2; ++i) {
        const Physical& p = ph[i];
        s.A(w[i], 0) = -K[i] / p.M;
        s.A(w[i], w[i]) = -p.D / p.M;
        s.B(w[i], kLoadInput) = -d[i] / p.M;
        if (has_gov[i]) {
            s.A(w[i], pm[i]) = 1.0 / p.M;
            s.A(pm[i], w[i]) = -1.0 / (p.R * p.Tg);
            s.A(pm[i], pm[i]) = -1.0 / p.Tg;
            s.B(pm[i], i) = 1.0 / p.Tg;
            s.B(pm[i], 2 + i) = 1.0 / (p.R * p.Tg);
        } else {
            // Ideal droop: setpoints act directly on the virtual rotor.
            s.B(w[i], i) = 1.0 / p.M;
            s.B(w[i], 2 + i) = p.D / p.M;
        }
    }

    const Eigen::Index p_out = static_cast<Eigen::Index>(options.outputs.size());
    s.C = Eigen::MatrixXd::Zero(p_out, n);
    s.D = Eigen::MatrixXd::Zero(p_out, 5);
    for (Eigen::Index r = 0; r < p_out; ++r) {
        const std::string& name = options.outputs[static_cast<std::size_t>(r)];
        if (name == "dw1") {
            s.C(r, w[0]) = 1.0;
        } else if (name == "dw2") {
            s.C(r, w[1]) = 1.0;
        } else if (name == "ddelta12") {
            s.C(r, 0) = 1.0;
        } else if (name == "dPe1" || name == "dPe2") {
            const int i = name == "dPe1" ? 0 : 1;
            s.C(r, 0) = K[i];
            s.D(r, kLoadInput) = d[i];
        } else if (name == "dPm1" || name == "dPm2") {
            const int i = name == "dPm1" ? 0 : 1;
            if (!has_gov[i]) throw AssemblyError("output " + name + " requested but machine " +
                                                 std::to_string(i + 1) + " has no governor");
            s.C(r, pm[i]) = 1.0;
        } else {
            throw AssemblyError("unknown output channel '" + name + "'");
        }
        s.output_labels.push_back(name);
    }
    s.validate();
    return s;
}

}  // namespace gridmodal::models
