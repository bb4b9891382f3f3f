#include "gridmodal/system.hpp"

#include "gridmodal/error.hpp"

namespace gridmodal {

double NetworkSpec::reactance(std::size_t machine_count) const {
    if (scr.has_value() == X.has_value()) throw DomainError("network: specify exactly one of SCR or X");
    if (X) {
        if (!(*X > 0.0)) throw DomainError("network: X must be positive");
        return *X;
    }
    if (machine_count == 1) {
        if (!(*scr > 0.0)) throw DomainError("network: SCR must be positive");
        return 1.0 / *scr;
    }
    return perunit::x_from_scr(*scr, k);
}

operating::NetworkShape SystemCase::shape() const {
    return {network.reactance(machines.size()), network.k, network.V1, network.V2};
}

Assembly assemble_at(const SystemCase& sc, const operating::OperatingPoint& op) {
    Assembly out;
    out.op = op;
    const operating::NetworkShape shape = sc.shape();
    out.net = shape.with_load(op.R_LD);

    if (sc.machines.size() == 1) {
        const models::MachineParams& m = sc.machines.front();
        out.lin.d1 = operating::single_load_sensitivity(shape.V1, shape.X, op.R_LD);
        out.model = m.is_gfm() ? models::build_single_gfm(m, out.lin.d1, sc.base)
                               : models::build_single_gcsg(m, out.lin.d1, sc.base);
        return out;
    }
    if (sc.machines.size() != 2) throw AssemblyError("system case must have one or two machines");

    out.lin = operating::linearize(out.net, op);
    models::AssemblyOptions opts;
    opts.outputs = sc.outputs;
    out.model = models::build_two_machine(sc.machines[0], sc.machines[1], out.lin, sc.base, opts);
    return out;
}

Assembly assemble(const SystemCase& sc) {
    const operating::NetworkShape shape = sc.shape();
    if (sc.machines.size() == 1) {
        return assemble_at(sc, operating::solve_single_machine(shape.V1, shape.X, sc.dispatch.pref1));
    }
    if (sc.machines.size() != 2) throw AssemblyError("system case must have one or two machines");
    return assemble_at(sc, operating::solve_operating_point(shape, sc.dispatch));
}

}  // namespace gridmodal
