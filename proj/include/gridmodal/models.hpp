#pragma once

#include "gridmodal/operating.hpp"
#include "gridmodal/perunit.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace gridmodal::models {

/// Governor-controlled synchronous generator, per-unit on its own rating.
struct GcsgParams {
    double H = 4.0;
    double D_pu = 0.0;
    double R_pu = 0.05;
    double Tg = 0.25;
};

/// Droop-based grid former. The droop law behaves as virtual inertia
/// Tf/R and virtual damping 1/R; inertia is specified directly through H_virtual.
struct GfmParams {
    double H_virtual = 4.0;
    double R_droop_pu = 0.05;

    double D_virtual_pu() const { return 1.0 / R_droop_pu; }
};

enum class MachineKind { Gcsg, Gfm };

struct MachineParams {
    double S_pu = 1.0;
    std::variant<GcsgParams, GfmParams> control;

    static MachineParams gcsg(double S_pu, double H, double D_pu, double R_pu, double Tg);
    static MachineParams gfm(double S_pu, double H_virtual, double R_droop_pu);

    MachineKind kind() const;
    bool is_gfm() const { return kind() == MachineKind::Gfm; }
    double inertia() const;
    void validate() const;
};

enum class StateRole { Angle, Speed, MechanicalPower, Other };

class StateSpaceModel {
public:
    Eigen::MatrixXd A, B, C, D;
    std::vector<std::string> state_labels;
    std::vector<std::string> input_labels;
    std::vector<std::string> output_labels;
    std::vector<StateRole> state_roles;

    Eigen::Index states() const { return A.rows(); }
    Eigen::Index inputs() const { return B.cols(); }
    Eigen::Index outputs() const { return C.rows(); }

    /// Throws AssemblyError on inconsistent dimensions, label counts, or non-finite entries.
    void validate() const;

    std::optional<Eigen::Index> state_index(std::string_view label) const;
    std::optional<Eigen::Index> input_index(std::string_view label) const;
    std::optional<Eigen::Index> output_index(std::string_view label) const;
};

struct SecondOrderSummary {
    double fn = 0.0;  // Hz
    double zeta = 0.0;
    bool critically_damped = false;
};

/// Approximate turbine-governor mode of a lone GC-SG (valid when 2H >> D_pu).
SecondOrderSummary turbine_governor_summary(double H, double R_pu, double Tg);

struct VirtualInertia {
    double M;  // pu*s
    double D;  // pu
};

VirtualInertia gfm_equivalence(double Tf, double R_droop_pu);

/// Droop filter time constant implied by a virtual inertia constant:
/// Tf / R = 2 H on the machine base.
double filter_time_constant(double H_virtual, double R_droop_pu);

/// Lone GC-SG, states [dw1, dPm1], inputs [dPref1, dwref1, dRLD], outputs [dw1, dPe1].
StateSpaceModel build_single_gcsg(const MachineParams& machine, double d1, const perunit::BaseSystem& base);

/// Lone GFM, state [dw1], same inputs/outputs as build_single_gcsg.
StateSpaceModel build_single_gfm(const MachineParams& machine, double d1, const perunit::BaseSystem& base);

enum class PowerUnits {
    SystemPu,  // powers normalised by Sbase (default)
    Physical,  // powers in Sbase units (W when Sbase is in W)
};

struct AssemblyOptions {
    PowerUnits units = PowerUnits::SystemPu;
    /// Output channels; any of dw1, dw2, dPe1, dPe2, ddelta12, dPm1, dPm2.
    std::vector<std::string> outputs = {"dw1", "dw2", "dPe1"};
};

/// Two-machine linearized model. States [ddelta12, dw1, dPm1, dw2, dPm2] with the
/// governor state omitted for each GFM machine; inputs
/// [dPref1, dPref2, dwref1, dwref2, dRLD].
StateSpaceModel build_two_machine(const MachineParams& m1, const MachineParams& m2,
                                  const operating::LinCoeffs& lin, const perunit::BaseSystem& base,
                                  const AssemblyOptions& options = {});

}  // namespace gridmodal::models
