#pragma once

#include "gridmodal/netred.hpp"

namespace gridmodal::operating {

/// Network data known before the load flow; R_LD is an unknown of the equilibrium.
struct NetworkShape {
    double X = 1.0;
    double k = 0.5;
    double V1 = 1.0;
    double V2 = 1.0;

    netred::NetworkParams with_load(double R_LD) const { return {X, k, R_LD, V1, V2}; }
};

struct Dispatch {
    double pref1 = 0.0;
    double pref2 = 0.0;

    void validate() const;
};

/// Solved equilibrium. Angles in radians; delta_i3 = delta_i - delta_3.
struct OperatingPoint {
    double delta12 = 0.0;
    double R_LD = 0.0;
    double V3 = 0.0;
    double pe1 = 0.0;
    double pe2 = 0.0;
    double delta13 = 0.0;
    double delta23 = 0.0;
    int iterations = 0;
    double residual = 0.0;

    double load_conductance() const { return 1.0 / R_LD; }
};

/// Linearized power coefficients: Klin_i = dPe_i/d(delta12), d_i = dPe_i/dR_LD.
struct LinCoeffs {
    double Klin1 = 0.0;
    double Klin2 = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
};

struct SolverOptions {
    int max_iterations = 50;
    double tolerance = 1e-12;   // target max-norm power residual, pu
    double acceptance = 1e-10;  // residual still accepted when the target stalls
};

/// Newton solve of Pe1(delta12, R_LD) = Pref1, Pe2(delta12, R_LD) = Pref2 on the
/// two-machine feeder. Throws InfeasibleError on non-convergence.
OperatingPoint solve_operating_point(const NetworkShape& shape, const Dispatch& dispatch,
                                     const SolverOptions& options = {});

LinCoeffs linearize(const netred::NetworkParams& net, const OperatingPoint& op);

/// dPe1/dR_LD for the single generator feeding R_LD through X.
double single_load_sensitivity(double V1, double X, double R_LD0);

/// Pe1 = V1^2 R / (R^2 + X^2) for the single generator feeder.
double single_machine_power(double V1, double X, double R_LD);

/// Load resistance on the high-resistance branch of the single-machine power
/// curve that draws `pref`. Throws InfeasibleError above the transfer limit.
OperatingPoint solve_single_machine(double V1, double X, double pref);

}  // namespace gridmodal::operating
