#pragma once

// Three-bus feeder: generator buses 1 and 2 joined by a tie of total
// reactance X, with a resistive load tapped at fraction k from bus 1.
//
//   bus 1 --- j*k*X --- bus 3 --- j*(1-k)*X --- bus 2
//                         |
//                        R_LD
//
// Bus 3 carries no injection and is eliminated by Kron reduction.

#include <Eigen/Dense>

#include <complex>

namespace gridmodal::netred {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

struct NetworkParams {
    double X = 1.0;     // total tie reactance, pu
    double k = 0.5;     // load split point
    double R_LD = 1.0;  // load resistance, pu
    double V1 = 1.0;
    double V2 = 1.0;

    /// Throws DomainError on X <= 0, k outside (0,1), R_LD <= 0 or V <= 0.
    void validate() const;
};

/// Real/imaginary parts of the Kron-reduced 2x2 admittance matrix plus the
/// voltage-stiffness term Dcal = (X k (k-1) / R_LD)^2 + 1.
struct ReducedNetwork {
    double G11, B11;
    double G12, B12;
    double G22, B22;
    double Dcal;
};

struct PowerPair {
    double pe1;
    double pe2;
};

ComplexMatrix build_admittance(const NetworkParams& net);

/// Eliminates `node` from a square admittance matrix:
/// Y'_ij = Y_ij - Y_ik Y_kj / Y_kk. Throws ReductionError when |Y_kk| falls
/// below 1e-12 times the largest entry magnitude.
ComplexMatrix kron_reduce(const ComplexMatrix& Y, Eigen::Index node);

double voltage_stiffness(const NetworkParams& net);

/// Closed-form reduced coefficients.
ReducedNetwork reduced_coefficients(const NetworkParams& net);

/// Pe1/Pe2 from the reduced conductances and susceptances.
PowerPair electrical_power(const ReducedNetwork& red, const NetworkParams& net, double delta12);

/// Same powers written in terms of Dcal with explicit network parameters.
PowerPair electrical_power_stiffness_form(const NetworkParams& net, double delta12);

/// |V3| in closed form.
double load_voltage(const NetworkParams& net, double delta12);

/// Bus-3 phasor from the full nodal equations with V1 at angle delta1 and
/// V2 at angle delta2 (no injection at bus 3).
Complex load_bus_voltage(const NetworkParams& net, double delta1, double delta2);

}  // namespace gridmodal::netred
