#include "gridmodal/netred.hpp"

#include "gridmodal/error.hpp"

#include <cassert>
#include <cmath>
#include <string>

namespace gridmodal::netred {

namespace {

constexpr double kPivotTolerance = 1e-12;

}  // namespace

void NetworkParams::validate() const {
    if (!(X > 0.0) || !std::isfinite(X)) throw DomainError("network: X must be positive");
    if (!(k > 0.0 && k < 1.0)) throw DomainError("network: k must lie in (0, 1)");
    if (!(R_LD > 0.0)) throw DomainError("network: R_LD must be positive");
    if (!(V1 > 0.0) || !(V2 > 0.0)) throw DomainError("network: V1 and V2 must be positive");
}

ComplexMatrix build_admittance(const NetworkParams& net) {
    net.validate();
    const Complex j(0.0, 1.0);
    const Complex y13 = -j / (net.k * net.X);          // branch 1-3
    const Complex y23 = -j / ((1.0 - net.k) * net.X);  // branch 2-3
    const Complex y_load = 1.0 / net.R_LD;

    ComplexMatrix Y = ComplexMatrix::Zero(3, 3);
    Y(0, 0) = y13;
    Y(1, 1) = y23;
    Y(2, 2) = y13 + y23 + y_load;
    Y(0, 2) = Y(2, 0) = -y13;
    Y(1, 2) = Y(2, 1) = -y23;
    return Y;
}

ComplexMatrix kron_reduce(const ComplexMatrix& Y, Eigen::Index node) {
    const Eigen::Index n = Y.rows();
    if (n != Y.cols() || n < 2) throw ReductionError("kron_reduce: matrix must be square with n >= 2");
    if (node < 0 || node >= n) throw ReductionError("kron_reduce: node index out of range");

    const double scale = Y.cwiseAbs().maxCoeff();
    const Complex pivot = Y(node, node);
    if (!(std::abs(pivot) > kPivotTolerance * scale)) {
        throw ReductionError("kron_reduce: pivot |Y_kk| = " + std::to_string(std::abs(pivot)) +
                             " is numerically zero");
    }

    ComplexMatrix out(n - 1, n - 1);
    for (Eigen::Index i = 0, oi = 0; i < n; ++i) {
        if (i == node) continue;
        for (Eigen::Index jj = 0, oj = 0; jj < n; ++jj) {
            if (jj == node) continue;
            out(oi, oj) = Y(i, jj) - Y(i, node) * Y(node, jj) / pivot;
            ++oj;
        }
        ++oi;
    }
    return out;
}

double voltage_stiffness(const NetworkParams& net) {
    const double t = net.X / net.R_LD * net.k * (net.k - 1.0);
    return t * t + 1.0;
}

ReducedNetwork reduced_coefficients(const NetworkParams& net) {
    net.validate();
    const double X = net.X;
    const double k = net.k;
    const double R = net.R_LD;
    const double Dc = voltage_stiffness(net);

    ReducedNetwork red{};
    red.Dcal = Dc;
    red.G12 = k * (1.0 - k) / (R * Dc);
    red.B12 = 1.0 / (X * Dc);
    red.G11 = (1.0 - k) * (1.0 - k) / (R * Dc);
    red.B11 = (1.0 - k - Dc) / (k * X * Dc);
    red.G22 = k * k / (R * Dc);
    red.B22 = (k - Dc) / ((1.0 - k) * X * Dc);
    return red;
}

PowerPair electrical_power_stiffness_form(const NetworkParams& net, double delta12) {
    const double Dc = voltage_stiffness(net);
    const double k = net.k;
    const double c = std::cos(delta12);
    const double s = std::sin(delta12);
    const double mutual = k * (1.0 - k) / net.R_LD;
    const double pe1 =
        net.V1 / Dc * (net.V1 * (1.0 - k) * (1.0 - k) / net.R_LD + net.V2 * (mutual * c + s / net.X));
    const double pe2 = net.V2 / Dc * (net.V2 * k * k / net.R_LD + net.V1 * (mutual * c - s / net.X));
    return {pe1, pe2};
}

PowerPair electrical_power(const ReducedNetwork& red, const NetworkParams& net, double delta12) {
    const double c = std::cos(delta12);
    const double s = std::sin(delta12);
    const double v1v2 = net.V1 * net.V2;
    const PowerPair p{
        net.V1 * net.V1 * red.G11 + v1v2 * (red.G12 * c + red.B12 * s),
        net.V2 * net.V2 * red.G22 + v1v2 * (red.G12 * c - red.B12 * s),
    };
#ifndef NDEBUG
    const PowerPair q = electrical_power_stiffness_form(net, delta12);
    const double scale = std::abs(p.pe1) + std::abs(p.pe2) + 1e-300;
    assert(std::abs(p.pe1 - q.pe1) <= 1e-12 * scale && std::abs(p.pe2 - q.pe2) <= 1e-12 * scale);
#endif
    return p;
}

double load_voltage(const NetworkParams& net, double delta12) {
    net.validate();
    const double k = net.k;
    const double num = net.V1 * net.V1 * (1.0 - k) * (1.0 - k) + net.V2 * net.V2 * k * k +
                       2.0 * net.V1 * net.V2 * k * (1.0 - k) * std::cos(delta12);
    return std::sqrt(num / voltage_stiffness(net));
}

Complex load_bus_voltage(const NetworkParams& net, double delta1, double delta2) {
    const ComplexMatrix Y = build_admittance(net);
    const Complex v1 = std::polar(net.V1, delta1);
    const Complex v2 = std::polar(net.V2, delta2);
    return -(Y(2, 0) * v1 + Y(2, 1) * v2) / Y(2, 2);
}

}  // namespace gridmodal::netred
