#pragma once

// A complete study case (network + machines + dispatch) and the pipeline that
// turns it into a linearized model.

#include "gridmodal/models.hpp"
#include "gridmodal/netred.hpp"
#include "gridmodal/operating.hpp"
#include "gridmodal/perunit.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gridmodal {

struct NetworkSpec {
    std::optional<double> scr;  // exactly one of scr / X
    std::optional<double> X;
    double k = 0.5;
    double V1 = 1.0;
    double V2 = 1.0;

    /// Tie reactance. Two machines: X = 1/(SCR k (1-k)); single machine: X = 1/SCR.
    double reactance(std::size_t machine_count) const;
};

struct SystemCase {
    perunit::BaseSystem base;
    NetworkSpec network;
    std::vector<models::MachineParams> machines;
    operating::Dispatch dispatch;
    std::vector<std::string> outputs = {"dw1", "dw2", "dPe1"};

    operating::NetworkShape shape() const;
};

struct Assembly {
    netred::NetworkParams net;
    operating::OperatingPoint op;
    operating::LinCoeffs lin;
    models::StateSpaceModel model;
};

/// Solves the operating point, linearizes, and builds the state-space model.
Assembly assemble(const SystemCase& sc);

/// Re-linearizes around an already solved operating point (parameters that do
/// not move the equilibrium).
Assembly assemble_at(const SystemCase& sc, const operating::OperatingPoint& op);

}  // namespace gridmodal
