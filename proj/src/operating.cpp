#include "gridmodal/operating.hpp"

#include "gridmodal/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gridmodal::operating {

namespace {

constexpr double kHalfPi = 1.57079632679489661923;
constexpr int kMaxHalvings = 40;

struct Residual {
    double r1;
    double r2;
    double norm() const { return std::max(std::abs(r1), std::abs(r2)); }
};

Residual residual_at(const NetworkShape& shape, const Dispatch& dispatch, double delta12, double R) {
    const netred::NetworkParams net = shape.with_load(R);
    const netred::PowerPair p = netred::electrical_power(netred::reduced_coefficients(net), net, delta12);
    return {p.pe1 - dispatch.pref1, p.pe2 - dispatch.pref2};
}

// Partial derivatives at an arbitrary (delta12, R_LD); the closed forms hold
// off-equilibrium as long as Pe is evaluated at the same point.
LinCoeffs partials(const netred::NetworkParams& net, double delta12) {
    const netred::ReducedNetwork red = netred::reduced_coefficients(net);
    const netred::PowerPair p = netred::electrical_power(red, net, delta12);
    const double v1v2 = net.V1 * net.V2;
    const double s = std::sin(delta12);
    const double c = std::cos(delta12);
    const double sync = v1v2 / net.X * s;
    LinCoeffs lin;
    lin.Klin1 = v1v2 * (-red.G12 * s + red.B12 * c);
    lin.Klin2 = v1v2 * (-red.G12 * s - red.B12 * c);
    lin.d1 = (p.pe1 * (red.Dcal - 2.0) + sync) / (red.Dcal * net.R_LD);
    lin.d2 = (p.pe2 * (red.Dcal - 2.0) - sync) / (red.Dcal * net.R_LD);
    return lin;
}

void validate_shape(const NetworkShape& shape) {
    shape.with_load(1.0).validate();
}

OperatingPoint finish(const NetworkShape& shape, double delta12, double R, int iterations, double residual) {
    const netred::NetworkParams net = shape.with_load(R);
    const netred::PowerPair p = netred::electrical_power(netred::reduced_coefficients(net), net, delta12);
    const netred::Complex v3 = netred::load_bus_voltage(net, delta12, 0.0);
    const double delta3 = std::arg(v3);

    OperatingPoint op;
    op.delta12 = delta12;
    op.R_LD = R;
    op.V3 = std::abs(v3);
    op.pe1 = p.pe1;
    op.pe2 = p.pe2;
    op.delta13 = delta12 - delta3;
    op.delta23 = -delta3;
    op.iterations = iterations;
    op.residual = residual;
    return op;
}

}  // namespace

void Dispatch::validate() const {
    if (!(pref1 >= 0.0) || !(pref2 >= 0.0)) throw DomainError("dispatch: Pref1 and Pref2 must be non-negative");
    if (!(pref1 + pref2 > 0.0)) throw DomainError("dispatch: Pref1 + Pref2 must be positive");
}

OperatingPoint solve_operating_point(const NetworkShape& shape, const Dispatch& dispatch,
                                     const SolverOptions& options) {
    validate_shape(shape);
    dispatch.validate();

    double delta = 0.0;
    double R = shape.V1 * shape.V2 / (dispatch.pref1 + dispatch.pref2);
    Residual res = residual_at(shape, dispatch, delta, R);

    for (int it = 0; it < options.max_iterations; ++it) {
        if (res.norm() <= options.tolerance) return finish(shape, delta, R, it, res.norm());

        const LinCoeffs J = partials(shape.with_load(R), delta);
        const double det = J.Klin1 * J.d2 - J.Klin2 * J.d1;
        if (!(std::abs(det) > 0.0) || !std::isfinite(det)) {
            throw InfeasibleError("operating point: singular load-flow Jacobian", it, res.norm());
        }
        // Cramer's rule keeps a symmetric residual from generating an angle step.
        const double step_delta = (-res.r1 * J.d2 + res.r2 * J.d1) / det;
        const double step_R = (-J.Klin1 * res.r2 + J.Klin2 * res.r1) / det;

        double lambda = 1.0;
        bool improved = false;
        for (int h = 0; h < kMaxHalvings; ++h, lambda *= 0.5) {
            const double trial_delta = delta + lambda * step_delta;
            const double trial_R = R + lambda * step_R;
            if (!(trial_R > 0.0) || std::abs(trial_delta) >= kHalfPi) continue;
            const Residual trial = residual_at(shape, dispatch, trial_delta, trial_R);
            if (trial.norm() < res.norm()) {
                delta = trial_delta;
                R = trial_R;
                res = trial;
                improved = true;
                break;
            }
        }
        if (!improved) {
            if (res.norm() <= options.acceptance) return finish(shape, delta, R, it, res.norm());
            throw InfeasibleError("operating point: load flow stalled at residual " + std::to_string(res.norm()) +
                                      " pu (network too weak for the dispatch?)",
                                  it, res.norm());
        }
    }
    if (res.norm() <= options.acceptance) return finish(shape, delta, R, options.max_iterations, res.norm());
    throw InfeasibleError("operating point: no convergence after " + std::to_string(options.max_iterations) +
                              " iterations",
                          options.max_iterations, res.norm());
}

LinCoeffs linearize(const netred::NetworkParams& net, const OperatingPoint& op) {
    net.validate();
    return partials(net, op.delta12);
}

double single_load_sensitivity(double V1, double X, double R_LD0) {
    const double den = R_LD0 * R_LD0 + X * X;
    return V1 * V1 / (den * den) * (X * X - R_LD0 * R_LD0);
}

double single_machine_power(double V1, double X, double R_LD) {
    return V1 * V1 * R_LD / (R_LD * R_LD + X * X);
}

OperatingPoint solve_single_machine(double V1, double X, double pref) {
    if (!(V1 > 0.0) || !(X > 0.0)) throw DomainError("single machine: V1 and X must be positive");
    if (!(pref > 0.0)) throw DomainError("single machine: Pref1 must be positive");
    // pref R^2 - V^2 R + pref X^2 = 0, high-resistance root.
    const double v2 = V1 * V1;
    const double disc = v2 * v2 - 4.0 * pref * pref * X * X;
    if (disc < 0.0) {
        throw InfeasibleError("single machine: dispatch exceeds the transfer limit V^2/(2X)", 0,
                              pref - v2 / (2.0 * X));
    }
    const double R = (v2 + std::sqrt(disc)) / (2.0 * pref);

    OperatingPoint op;
    op.R_LD = R;
    op.pe1 = single_machine_power(V1, X, R);
    op.V3 = V1 * R / std::sqrt(R * R + X * X);
    op.delta13 = std::atan2(X, R);
    op.residual = std::abs(op.pe1 - pref);
    return op;
}

}  // namespace gridmodal::operating
