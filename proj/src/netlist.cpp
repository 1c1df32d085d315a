#include "relaxec/netlist.hpp"

#include <algorithm>
#include <unordered_set>

#include "relaxec/error.hpp"

namespace relaxec {

const char* gate_op_name(GateOp op) {
    switch (op) {
        case GateOp::And: return "AND";
        case GateOp::Or: return "OR";
        case GateOp::Xor: return "XOR";
        case GateOp::Not: return "NOT";
        case GateOp::Buf: return "BUF";
        case GateOp::Const0: return "CONST0";
        case GateOp::Const1: return "CONST1";
        case GateOp::Nand: return "NAND";
        case GateOp::Nor: return "NOR";
        case GateOp::Xnor: return "XNOR";
    }
    return "?";
}

int gate_arity(GateOp op) {
    switch (op) {
        case GateOp::Const0:
        case GateOp::Const1: return 0;
        case GateOp::Not:
        case GateOp::Buf: return 1;
        default: return 2;
    }
}

bool eval_gate(GateOp op, bool a, bool b) {
    switch (op) {
        case GateOp::And: return a && b;
        case GateOp::Or: return a || b;
        case GateOp::Xor: return a != b;
        case GateOp::Not: return !a;
        case GateOp::Buf: return a;
        case GateOp::Const0: return false;
        case GateOp::Const1: return true;
        case GateOp::Nand: return !(a && b);
        case GateOp::Nor: return !(a || b);
        case GateOp::Xnor: return a == b;
    }
    return false;
}

uint64_t eval_gate64(GateOp op, uint64_t a, uint64_t b) {
    switch (op) {
        case GateOp::And: return a & b;
        case GateOp::Or: return a | b;
        case GateOp::Xor: return a ^ b;
        case GateOp::Not: return ~a;
        case GateOp::Buf: return a;
        case GateOp::Const0: return 0;
        case GateOp::Const1: return ~0ull;
        case GateOp::Nand: return ~(a & b);
        case GateOp::Nor: return ~(a | b);
        case GateOp::Xnor: return ~(a ^ b);
    }
    return 0;
}

bool Netlist::has_net(const std::string& net) const {
    for (const auto& i : inputs)
        if (i == net) return true;
    for (const auto& g : gates)
        if (g.output == net) return true;
    return false;
}

int Netlist::driver_of(const std::string& net) const {
    for (size_t i = 0; i < gates.size(); ++i)
        if (gates[i].output == net) return (int)i;
    return -1;
}

void Netlist::validate() const {
    std::unordered_map<std::string, int> defined;  // net -> order of definition
    int ord = 0;
    for (const auto& i : inputs) {
        if (defined.count(i))
            throw Error(ErrorKind::MultiplyDriven, "net driven twice: " + i);
        defined[i] = ord++;
    }
    for (const auto& g : gates) {
        if ((int)g.inputs.size() != gate_arity(g.op))
            throw Error(ErrorKind::Syntax, std::string("bad arity for ") + gate_op_name(g.op) +
                                               " gate " + g.output);
        for (const auto& in : g.inputs) {
            auto it = defined.find(in);
            if (it == defined.end())
                throw Error(ErrorKind::UndefinedNet, "undefined net: " + in);
        }
        if (defined.count(g.output))
            throw Error(ErrorKind::MultiplyDriven, "net driven twice: " + g.output);
        defined[g.output] = ord++;
    }
    for (const auto& o : outputs)
        if (!defined.count(o)) throw Error(ErrorKind::UndefinedNet, "undefined net: " + o);
}

std::unordered_map<std::string, int> topo_levels(const Netlist& n) {
    std::unordered_map<std::string, int> lvl;
    for (const auto& i : n.inputs) lvl[i] = 0;
    for (const auto& g : n.gates) {
        int m = 0;
        for (const auto& in : g.inputs) m = std::max(m, lvl.at(in));
        lvl[g.output] = m + 1;  // constants land at level 1
    }
    return lvl;
}

int max_level(const Netlist& n) {
    auto lvl = topo_levels(n);
    int m = 0;
    for (const auto& [net, l] : lvl) m = std::max(m, l);
    return m;
}

Netlist prune_dead(const Netlist& n) {
    n.validate();
    std::unordered_map<std::string, const Gate*> driver;
    for (const auto& g : n.gates) driver[g.output] = &g;
    std::unordered_set<std::string> live(n.outputs.begin(), n.outputs.end());
    std::vector<std::string> work(n.outputs.begin(), n.outputs.end());
    while (!work.empty()) {
        std::string net = work.back();
        work.pop_back();
        auto it = driver.find(net);
        if (it == driver.end()) continue;  // primary input
        for (const auto& in : it->second->inputs)
            if (live.insert(in).second) work.push_back(in);
    }
    Netlist out;
    out.name = n.name;
    out.inputs = n.inputs;
    out.outputs = n.outputs;
    for (const auto& g : n.gates)
        if (live.count(g.output)) out.gates.push_back(g);
    return out;
}

Netlist bufferize(const Netlist& n, int target_depth) {
    n.validate();
    auto lvl = topo_levels(n);
    int depth = 0;
    for (const auto& [net, l] : lvl) depth = std::max(depth, l);
    if (target_depth < 0) target_depth = depth;
    if (target_depth < depth)
        throw Error(ErrorKind::LevelMismatch, "target depth below circuit depth");

    Netlist out;
    out.name = n.name;
    out.inputs = n.inputs;

    // Buffer chains are shared per source net and built on demand:
    // chain[k] is the net k buffer steps above the source.
    std::unordered_map<std::string, std::vector<std::string>> chain;
    auto at_level = [&](const std::string& net, int want) -> std::string {
        int have = lvl.at(net);
        if (want == have) return net;
        auto& ch = chain[net];
        while ((int)ch.size() < want - have) {
            std::string prev = ch.empty() ? net : ch.back();
            std::string next = net + "$buf" + std::to_string(ch.size() + 1);
            out.gates.push_back({next, GateOp::Buf, {prev}});
            ch.push_back(next);
        }
        return ch[want - have - 1];
    };

    // Gates in original order; a gate at level L reads fan-ins at L-1.
    for (const auto& g : n.gates) {
        int L = lvl.at(g.output);
        Gate ng = g;
        for (auto& in : ng.inputs) in = at_level(in, L - 1);
        out.gates.push_back(ng);
    }

    // Pad every primary output up to target_depth so all outputs share
    // one level. A padded output keeps its name: the original driver is
    // renamed and consumers are rewired to the renamed net.
    out.outputs = n.outputs;
    for (const auto& o : n.outputs) {
        int L = lvl.at(o);
        if (L == target_depth) continue;
        if (L == 0)
            throw Error(ErrorKind::LevelMismatch,
                        "cannot pad pass-through output net: " + o);
        std::string core = o + "$core";
        for (auto& g : out.gates) {
            if (g.output == o) g.output = core;
            for (auto& in : g.inputs)
                if (in == o) in = core;
        }
        std::string prev = core;
        for (int l = L + 1; l < target_depth; ++l) {
            std::string next = o + "$buf" + std::to_string(l - L);
            out.gates.push_back({next, GateOp::Buf, {prev}});
            prev = next;
        }
        out.gates.push_back({o, GateOp::Buf, {prev}});
    }
    out.validate();
    return out;
}

CutPlan level_cuts(const Netlist& n1, const Netlist& n2) {
    int d1 = max_level(n1), d2 = max_level(n2);
    if (d1 != d2)
        throw Error(ErrorKind::LevelMismatch,
                    "circuit depths differ: " + std::to_string(d1) + " vs " + std::to_string(d2));
    auto check_local = [](const Netlist& n, const std::unordered_map<std::string, int>& lvl) {
        for (const auto& g : n.gates) {
            int L = lvl.at(g.output);
            for (const auto& in : g.inputs)
                if (lvl.at(in) != L - 1)
                    throw Error(ErrorKind::LevelMismatch,
                                "non-local connection at gate " + g.output + " (bufferize first)");
        }
    };
    auto l1 = topo_levels(n1), l2 = topo_levels(n2);
    check_local(n1, l1);
    check_local(n2, l2);

    // Net names are qualified "1:" / "2:" so the two circuits' namespaces
    // stay apart (identical copies would otherwise collide).
    CutPlan plan;
    plan.levels = d1;
    plan.cuts.assign(d1 + 1, {});
    auto add = [&](const Netlist& n, const std::unordered_map<std::string, int>& lvl,
                   const std::string& prefix) {
        for (const auto& i : n.inputs) {
            plan.cuts[0].push_back(prefix + i);
            plan.level_of[prefix + i] = 0;
        }
        for (const auto& g : n.gates) {
            int L = lvl.at(g.output);
            plan.cuts[L].push_back(prefix + g.output);
            plan.level_of[prefix + g.output] = L;
        }
    };
    add(n1, l1, "1:");
    add(n2, l2, "2:");
    return plan;
}

// ---- simulation ----

SimView::SimView(const Netlist& n) {
    n.validate();
    num_inputs_ = (int)n.inputs.size();
    net_names_ = n.inputs;
    for (size_t i = 0; i < n.inputs.size(); ++i) slot_of_[n.inputs[i]] = (int)i;
    for (const auto& g : n.gates) {
        Node node;
        node.op = g.op;
        if (g.inputs.size() > 0) node.a = slot_of_.at(g.inputs[0]);
        if (g.inputs.size() > 1) node.b = slot_of_.at(g.inputs[1]);
        slot_of_[g.output] = (int)net_names_.size();
        net_names_.push_back(g.output);
        nodes_.push_back(node);
    }
    for (const auto& o : n.outputs) output_slots_.push_back(slot_of_.at(o));
}

int SimView::slot_of(const std::string& net) const {
    auto it = slot_of_.find(net);
    return it == slot_of_.end() ? -1 : it->second;
}

void SimView::run64(const std::vector<uint64_t>& in, std::vector<uint64_t>& nets) const {
    nets.resize(net_names_.size());
    for (int i = 0; i < num_inputs_; ++i) nets[i] = in[i];
    for (size_t g = 0; g < nodes_.size(); ++g) {
        const Node& nd = nodes_[g];
        uint64_t a = nd.a >= 0 ? nets[nd.a] : 0;
        uint64_t b = nd.b >= 0 ? nets[nd.b] : 0;
        nets[num_inputs_ + g] = eval_gate64(nd.op, a, b);
    }
}

void SimView::run(const std::vector<uint8_t>& in, std::vector<uint8_t>& nets) const {
    nets.resize(net_names_.size());
    for (int i = 0; i < num_inputs_; ++i) nets[i] = in[i];
    for (size_t g = 0; g < nodes_.size(); ++g) {
        const Node& nd = nodes_[g];
        bool a = nd.a >= 0 ? nets[nd.a] : false;
        bool b = nd.b >= 0 ? nets[nd.b] : false;
        nets[num_inputs_ + g] = eval_gate(nd.op, a, b);
    }
}

std::vector<uint8_t> simulate(const Netlist& n, const std::vector<uint8_t>& in) {
    SimView sv(n);
    std::vector<uint8_t> nets;
    sv.run(in, nets);
    std::vector<uint8_t> out;
    for (int s : sv.output_slots()) out.push_back(nets[s]);
    return out;
}

}  // namespace relaxec
