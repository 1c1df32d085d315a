#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace relaxec {

enum class GateOp { And, Or, Xor, Not, Buf, Const0, Const1, Nand, Nor, Xnor };

const char* gate_op_name(GateOp op);
int gate_arity(GateOp op);
bool eval_gate(GateOp op, bool a, bool b);
uint64_t eval_gate64(GateOp op, uint64_t a, uint64_t b);

struct Gate {
    std::string output;
    GateOp op;
    std::vector<std::string> inputs;
};

/// Gate-level combinational circuit. Gates are stored in topological
/// order: every gate input is a primary input or the output of an
/// earlier gate. validate() enforces this along with single drivers,
/// arity and acyclicity.
struct Netlist {
    std::string name;
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    std::vector<Gate> gates;

    void validate() const;  // throws Error on violation

    bool has_net(const std::string& net) const;
    // Gate index driving `net`, or -1 when `net` is a primary input.
    int driver_of(const std::string& net) const;
};

/// Per-net topological level: 0 for primary inputs, 1 + max over fan-in
/// levels for gates. Constant gates sit at level 1.
std::unordered_map<std::string, int> topo_levels(const Netlist& n);

int max_level(const Netlist& n);

/// Drops gates that feed no primary output. Output functions unchanged.
Netlist prune_dead(const Netlist& n);

/// Replaces every connection spanning more than one level with a buffer
/// chain so each gate edge spans exactly one level, then pads all primary
/// outputs with buffers up to `target_depth` (defaults to the circuit's
/// own depth). Output functions are unchanged.
Netlist bufferize(const Netlist& n, int target_depth = -1);

struct CutPlan {
    int levels = 0;                       // k: cuts are Cut_0 .. Cut_k
    std::vector<std::vector<std::string>> cuts;
    std::unordered_map<std::string, int> level_of;
};

/// Level cuts over a bufferized pair: Cut_i collects the nets of both
/// circuits at level i, qualified "1:" / "2:" per side. Cut_0 is the
/// primary inputs, Cut_k the outputs.
CutPlan level_cuts(const Netlist& n1, const Netlist& n2);

// ---- BLIF subset ----

Netlist parse_blif(const std::string& text);
std::string emit_blif(const Netlist& n);

// ---- simulation ----

/// Index-compiled view of a netlist for fast exhaustive simulation.
/// Net slots: inputs first (in order), then gate outputs (in order).
class SimView {
  public:
    explicit SimView(const Netlist& n);

    int num_inputs() const { return num_inputs_; }
    int num_nets() const { return (int)net_names_.size(); }
    int slot_of(const std::string& net) const;
    const std::string& net_name(int slot) const { return net_names_[slot]; }
    const std::vector<int>& output_slots() const { return output_slots_; }

    // 64 input patterns per call: word bit t = value in pattern t.
    void run64(const std::vector<uint64_t>& in, std::vector<uint64_t>& nets) const;
    void run(const std::vector<uint8_t>& in, std::vector<uint8_t>& nets) const;

  private:
    struct Node {
        GateOp op;
        int a = -1, b = -1;
    };
    int num_inputs_;
    std::vector<Node> nodes_;  // one per gate, net slot = num_inputs_ + idx
    std::vector<std::string> net_names_;
    std::unordered_map<std::string, int> slot_of_;
    std::vector<int> output_slots_;
};

/// Output values of `n` under the given input assignment (by input order).
std::vector<uint8_t> simulate(const Netlist& n, const std::vector<uint8_t>& in);

}  // namespace relaxec
