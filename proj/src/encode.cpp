#include "relaxec/encode.hpp"

#include <algorithm>

#include "relaxec/error.hpp"

namespace relaxec {

int VarAllocator::alloc(const std::string& name) {
    auto it = map_.find(name);
    if (it != map_.end()) return it->second;
    int v = next_++;
    map_[name] = v;
    return v;
}

int VarAllocator::var_of(const std::string& name) const {
    auto it = map_.find(name);
    return it == map_.end() ? 0 : it->second;
}

void append_gate_clauses(CnfFormula& f, GateOp op, int z, int a, int b) {
    switch (op) {
        case GateOp::And:
            f.add_clause({-z, a});
            f.add_clause({-z, b});
            f.add_clause({z, -a, -b});
            break;
        case GateOp::Or:
            f.add_clause({z, -a});
            f.add_clause({z, -b});
            f.add_clause({-z, a, b});
            break;
        case GateOp::Nand:
            f.add_clause({z, a});
            f.add_clause({z, b});
            f.add_clause({-z, -a, -b});
            break;
        case GateOp::Nor:
            f.add_clause({-z, -a});
            f.add_clause({-z, -b});
            f.add_clause({z, a, b});
            break;
        case GateOp::Xor:
            f.add_clause({-z, a, b});
            f.add_clause({-z, -a, -b});
            f.add_clause({z, -a, b});
            f.add_clause({z, a, -b});
            break;
        case GateOp::Xnor:
            f.add_clause({z, a, b});
            f.add_clause({z, -a, -b});
            f.add_clause({-z, -a, b});
            f.add_clause({-z, a, -b});
            break;
        case GateOp::Buf:
            f.add_clause({-z, a});
            f.add_clause({z, -a});
            break;
        case GateOp::Not:
            f.add_clause({-z, -a});
            f.add_clause({z, a});
            break;
        case GateOp::Const0: f.add_clause({-z}); break;
        case GateOp::Const1: f.add_clause({z}); break;
    }
}

CnfFormula tseitin_encode(const Netlist& n, VarAllocator& alloc, const std::string& prefix) {
    n.validate();
    CnfFormula f;
    auto var = [&](const std::string& net) {
        int v = alloc.alloc(prefix + net);
        f.ensure_var(v);
        f.set_name(v, prefix + net);
        return v;
    };
    for (const auto& in : n.inputs) var(in);
    for (const auto& g : n.gates) {
        int z = var(g.output);
        int a = g.inputs.size() > 0 ? alloc.var_of(prefix + g.inputs[0]) : 0;
        int b = g.inputs.size() > 1 ? alloc.var_of(prefix + g.inputs[1]) : 0;
        append_gate_clauses(f, g.op, z, a, b);
    }
    return f;
}

CnfFormula eq_formula(const std::vector<int>& x1, const std::vector<int>& x2) {
    if (x1.size() != x2.size())
        throw Error(ErrorKind::Range, "eq_formula: length mismatch");
    CnfFormula f;
    for (size_t i = 0; i < x1.size(); ++i) {
        f.add_clause({-x1[i], x2[i]});
        f.add_clause({x1[i], -x2[i]});
    }
    return f;
}

std::vector<int> VarRoles::vars_with(VarRole r) const {
    std::vector<int> out;
    for (size_t v = 1; v < role.size(); ++v)
        if (role[v] == r) out.push_back((int)v);
    return out;
}

CnfFormula MiterFormulas::beta(const CnfFormula& h) const {
    CnfFormula b;
    b.ensure_var(num_vars);
    b.append(h);
    b.append(g_rlx);
    b.append(neq);
    return b;
}

Miter build_miter(const Netlist& n1, const Netlist& n2, const CutPlan* plan) {
    if (n1.outputs.size() != 1 || n2.outputs.size() != 1)
        throw Error(ErrorKind::Range, "build_miter: single-output netlists required");

    Miter m;
    auto& F = m.formulas;
    F.f_n1 = tseitin_encode(n1, m.alloc, "1:");
    F.f_n2 = tseitin_encode(n2, m.alloc, "2:");
    F.num_vars = m.alloc.count();

    for (const auto& in : n1.inputs) F.x1.push_back(m.alloc.var_of("1:" + in));
    for (const auto& in : n2.inputs) F.x2.push_back(m.alloc.var_of("2:" + in));
    F.z1 = m.alloc.var_of("1:" + n1.outputs[0]);
    F.z2 = m.alloc.var_of("2:" + n2.outputs[0]);

    F.eq = eq_formula(F.x1, F.x2);
    F.eq.ensure_var(F.num_vars);

    F.g_rlx.ensure_var(F.num_vars);
    F.g_rlx.append(F.f_n1);
    F.g_rlx.append(F.f_n2);

    F.g.ensure_var(F.num_vars);
    F.g.append(F.eq);
    F.g.append(F.g_rlx);

    F.neq.ensure_var(F.num_vars);
    F.neq.add_clause({F.z1, F.z2});
    F.neq.add_clause({-F.z1, -F.z2});

    F.alpha.ensure_var(F.num_vars);
    F.alpha.append(F.eq);
    F.alpha.append(F.f_n1);
    F.alpha.append(F.f_n2);
    F.alpha.append(F.neq);

    auto& R = m.roles;
    R.role.assign(F.num_vars + 1, VarRole::Internal1);
    for (int v : F.x1) R.role[v] = VarRole::Input1;
    for (int v : F.x2) R.role[v] = VarRole::Input2;
    for (const auto& g : n1.gates) R.role[m.alloc.var_of("1:" + g.output)] = VarRole::Internal1;
    for (const auto& g : n2.gates) R.role[m.alloc.var_of("2:" + g.output)] = VarRole::Internal2;
    R.role[F.z1] = VarRole::Output1;
    R.role[F.z2] = VarRole::Output2;

    R.cut_of.assign(F.num_vars + 1, -1);
    if (plan) {
        R.cut_vars.assign(plan->levels + 1, {});
        for (int i = 0; i <= plan->levels; ++i) {
            for (const auto& net : plan->cuts[i]) {
                int v = m.alloc.var_of(net);  // plan nets carry "1:"/"2:" prefixes
                if (v == 0) continue;
                R.cut_of[v] = i;
                R.cut_vars[i].push_back(v);
            }
            std::sort(R.cut_vars[i].begin(), R.cut_vars[i].end());
        }
    }
    return m;
}

}  // namespace relaxec
