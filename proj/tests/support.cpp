#include "support.hpp"

#include <algorithm>
#include <cassert>

namespace testsup {

void set_assignment(std::vector<uint8_t>& assign, const std::vector<int>& vars, uint64_t index) {
    for (size_t i = 0; i < vars.size(); ++i) assign[vars[i]] = (index >> i) & 1;
}

std::vector<uint8_t> truth_table(const CnfFormula& f, const std::vector<int>& vars) {
    assert(vars.size() <= 24);
    std::vector<uint8_t> table(1ull << vars.size());
    std::vector<uint8_t> assign(f.num_vars() + 1, 0);
    for (uint64_t i = 0; i < table.size(); ++i) {
        set_assignment(assign, vars, i);
        table[i] = f.eval(assign);
    }
    return table;
}

bool brute_sat(const CnfFormula& f, const std::vector<int>& vars) {
    std::vector<uint8_t> assign(f.num_vars() + 1, 0);
    for (uint64_t i = 0; i < (1ull << vars.size()); ++i) {
        set_assignment(assign, vars, i);
        if (f.eval(assign)) return true;
    }
    return false;
}

std::vector<uint8_t> exists_table(const CnfFormula& f, const std::vector<int>& v_vars,
                                  const std::vector<int>& w_vars) {
    assert(v_vars.size() + w_vars.size() <= 24);
    std::vector<uint8_t> table(1ull << v_vars.size(), 0);
    std::vector<uint8_t> assign(f.num_vars() + 1, 0);
    for (uint64_t v = 0; v < table.size(); ++v) {
        set_assignment(assign, v_vars, v);
        for (uint64_t w = 0; w < (1ull << w_vars.size()); ++w) {
            set_assignment(assign, w_vars, w);
            if (f.eval(assign)) {
                table[v] = 1;
                break;
            }
        }
    }
    return table;
}

bool equivalent(const CnfFormula& a, const CnfFormula& b, const std::vector<int>& vars) {
    int nv = std::max(a.num_vars(), b.num_vars());
    std::vector<uint8_t> assign(nv + 1, 0);
    for (uint64_t i = 0; i < (1ull << vars.size()); ++i) {
        set_assignment(assign, vars, i);
        if (a.eval(assign) != b.eval(assign)) return false;
    }
    return true;
}

CnfFormula random_cnf(std::mt19937_64& rng, int num_vars, int num_clauses) {
    CnfFormula f(num_vars);
    std::uniform_int_distribution<int> len_d(1, 4);
    std::uniform_int_distribution<int> var_d(1, num_vars);
    std::uniform_int_distribution<int> sign_d(0, 1);
    for (int c = 0; c < num_clauses; ++c) {
        int len = len_d(rng);
        std::vector<Lit> lits;
        for (int i = 0; i < len; ++i) {
            int v = var_d(rng);
            lits.push_back(sign_d(rng) ? v : -v);
        }
        f.add_clause(lits);  // tautologies silently dropped
    }
    return f;
}

Netlist random_netlist(std::mt19937_64& rng, int ninputs, int depth, int width,
                       const std::string& name) {
    using relaxec::Gate;
    using relaxec::GateOp;
    Netlist n;
    n.name = name;
    for (int i = 0; i < ninputs; ++i) n.inputs.push_back("x" + std::to_string(i));
    std::vector<std::string> pool = n.inputs;
    static const GateOp ops[] = {GateOp::And, GateOp::Or,  GateOp::Xor,  GateOp::Nand,
                                 GateOp::Nor, GateOp::Xnor, GateOp::Not, GateOp::Buf};
    int id = 0;
    std::uniform_int_distribution<int> op_d(0, 7);
    for (int d = 1; d <= depth; ++d) {
        std::uniform_int_distribution<int> pick(0, (int)pool.size() - 1);
        int w = d == depth ? 1 : 1 + (int)(rng() % width);
        std::vector<std::string> next;
        for (int g = 0; g < w; ++g) {
            GateOp op = ops[op_d(rng)];
            Gate gate;
            gate.op = op;
            gate.output = name + "_g" + std::to_string(id++);
            gate.inputs.push_back(pool[pick(rng)]);
            if (relaxec::gate_arity(op) == 2) gate.inputs.push_back(pool[pick(rng)]);
            n.gates.push_back(gate);
            next.push_back(gate.output);
        }
        for (const auto& g : next) pool.push_back(g);
    }
    n.outputs.push_back(n.gates.back().output);
    n.validate();
    return n;
}

}  // namespace testsup
