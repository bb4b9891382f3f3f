#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>

namespace oracle {

Reduced2 reduced_feeder(double X, double k, double R) {
    const cplx j(0.0, 1.0);
    const cplx y13 = 1.0 / (j * k * X);
    const cplx y23 = 1.0 / (j * (1.0 - k) * X);
    const cplx yL = 1.0 / R;
    // Nodal matrix entries.
    const cplx Y11 = y13, Y22 = y23, Y33 = y13 + y23 + yL;
    const cplx Y13 = -y13, Y23 = -y23;
    Reduced2 r;
    r.y11 = Y11 - Y13 * Y13 / Y33;
    r.y22 = Y22 - Y23 * Y23 / Y33;
    r.y12 = -Y13 * Y23 / Y33;
    r.y21 = r.y12;
    return r;
}

cplx bus3_voltage(double X, double k, double R, double V1, double V2, double delta12) {
    const cplx j(0.0, 1.0);
    const cplx y13 = 1.0 / (j * k * X);
    const cplx y23 = 1.0 / (j * (1.0 - k) * X);
    const cplx v1 = std::polar(V1, delta12);
    const cplx v2 = V2;
    // (v1 - v3) y13 + (v2 - v3) y23 = v3 / R
    return (v1 * y13 + v2 * y23) / (y13 + y23 + 1.0 / R);
}

std::pair<double, double> injected_power(double X, double k, double R, double V1, double V2, double delta12) {
    const cplx j(0.0, 1.0);
    const cplx v1 = std::polar(V1, delta12);
    const cplx v2 = V2;
    const cplx v3 = bus3_voltage(X, k, R, V1, V2, delta12);
    const cplx i1 = (v1 - v3) / (j * k * X);
    const cplx i2 = (v2 - v3) / (j * (1.0 - k) * X);
    return {(v1 * std::conj(i1)).real(), (v2 * std::conj(i2)).real()};
}

double central_difference(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

std::pair<cplx, cplx> quadratic_roots(double a, double b) {
    const double disc = a * a - 4.0 * b;
    if (disc >= 0.0) {
        const double s = std::sqrt(disc);
        // Stable form for the small root.
        const double q = -0.5 * (a + std::copysign(s, a));
        return {cplx(q, 0.0), cplx(b / q, 0.0)};
    }
    const double im = std::sqrt(-disc) / 2.0;
    return {cplx(-a / 2.0, im), cplx(-a / 2.0, -im)};
}

bool same_spectrum(std::vector<cplx> a, std::vector<cplx> b, double rel_tol) {
    if (a.size() != b.size()) return false;
    auto key = [](const cplx& x, const cplx& y) {
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
    };
    // Greedy nearest matching, order-free.
    std::vector<bool> used(b.size(), false);
    std::sort(a.begin(), a.end(), key);
    for (const cplx& x : a) {
        std::size_t best = b.size();
        double dist = INFINITY;
        for (std::size_t i = 0; i < b.size(); ++i) {
            if (used[i]) continue;
            const double d = std::abs(x - b[i]);
            if (d < dist) {
                dist = d;
                best = i;
            }
        }
        if (best == b.size() || dist > rel_tol * std::max(1.0, std::abs(x))) return false;
        used[best] = true;
    }
    return true;
}

gridmodal::models::MachineParams CaseGenerator::machine(bool allow_gfm) {
    const double S = uniform(0.2, 1.0);
    if (allow_gfm && coin(0.35)) {
        return gridmodal::models::MachineParams::gfm(S, uniform(0.05, 8.0), uniform(0.01, 0.2));
    }
    return gridmodal::models::MachineParams::gcsg(S, uniform(0.5, 10.0), uniform(0.0, 1.0), uniform(0.02, 0.2),
                                                  uniform(0.1, 2.0));
}

gridmodal::SystemCase CaseGenerator::two_machine_case(bool allow_gfm) {
    gridmodal::SystemCase sc;
    sc.network.scr = uniform(3.0, 20.0);
    sc.network.k = uniform(0.15, 0.85);
    sc.network.V1 = uniform(0.95, 1.05);
    sc.network.V2 = uniform(0.95, 1.05);
    sc.dispatch = {uniform(0.1, 0.6), uniform(0.1, 0.6)};
    sc.machines = {machine(allow_gfm), machine(allow_gfm)};
    sc.outputs = {"dw1", "dw2", "dPe1", "dPe2", "ddelta12"};
    return sc;
}

gridmodal::SystemCase CaseGenerator::symmetric_case() {
    gridmodal::SystemCase sc;
    sc.network.scr = uniform(3.0, 20.0);
    sc.network.k = 0.5;
    const double V = uniform(0.95, 1.05);
    sc.network.V1 = V;
    sc.network.V2 = V;
    const double P = uniform(0.1, 0.6);
    sc.dispatch = {P, P};
    const gridmodal::models::MachineParams m = machine(true);
    sc.machines = {m, m};
    sc.outputs = {"dw1", "dw2"};
    return sc;
}

}  // namespace oracle
