#include <algorithm>
#include <sstream>

#include "relaxec/error.hpp"
#include "relaxec/netlist.hpp"

namespace relaxec {

namespace {

struct CoverPattern {
    GateOp op;
    int arity;
    std::vector<std::string> cubes;  // canonical order
};

// Canonical covers for the gate library. Parsing accepts any cube order.
const std::vector<CoverPattern>& cover_table() {
    static const std::vector<CoverPattern> t = {
        {GateOp::And, 2, {"11 1"}},
        {GateOp::Or, 2, {"-1 1", "1- 1"}},
        {GateOp::Xor, 2, {"01 1", "10 1"}},
        {GateOp::Xnor, 2, {"00 1", "11 1"}},
        {GateOp::Nand, 2, {"-0 1", "0- 1"}},
        {GateOp::Nor, 2, {"00 1"}},
        {GateOp::Not, 1, {"0 1"}},
        {GateOp::Buf, 1, {"1 1"}},
        {GateOp::Const1, 0, {"1"}},
        {GateOp::Const0, 0, {}},
        // off-set spellings some tools emit
        {GateOp::Nand, 2, {"11 0"}},
        {GateOp::Nor, 2, {"-1 0", "1- 0"}},
        {GateOp::And, 2, {"-0 0", "0- 0"}},
        {GateOp::Or, 2, {"00 0"}},
        {GateOp::Not, 1, {"1 0"}},
        {GateOp::Buf, 1, {"0 0"}},
    };
    return t;
}

GateOp match_cover(int arity, std::vector<std::string> cubes, int line) {
    std::sort(cubes.begin(), cubes.end());
    for (const auto& p : cover_table()) {
        if (p.arity != arity) continue;
        std::vector<std::string> pc = p.cubes;
        std::sort(pc.begin(), pc.end());
        if (pc == cubes) return p.op;
    }
    throw Error(ErrorKind::Syntax,
                "line " + std::to_string(line) + ": cover not in gate library");
}

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

}  // namespace

Netlist parse_blif(const std::string& text) {
    Netlist n;
    std::vector<Gate> raw;
    bool saw_model = false, saw_end = false;

    // Continuation-joined logical lines with their source line numbers.
    std::vector<std::pair<int, std::string>> lines;
    {
        std::istringstream is(text);
        std::string line;
        int no = 0, start = 0;
        std::string acc;
        while (std::getline(is, line)) {
            ++no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            auto hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            if (acc.empty()) start = no;
            if (!line.empty() && line.back() == '\\') {
                acc += line.substr(0, line.size() - 1) + " ";
                continue;
            }
            acc += line;
            if (!split_ws(acc).empty()) lines.emplace_back(start, acc);
            acc.clear();
        }
        if (!split_ws(acc).empty()) lines.emplace_back(start, acc);
    }

    size_t i = 0;
    while (i < lines.size()) {
        auto [lno, line] = lines[i];
        auto toks = split_ws(line);
        const std::string& kw = toks[0];
        if (saw_end)
            throw Error(ErrorKind::Syntax, "line " + std::to_string(lno) + ": text after .end");
        if (kw == ".model") {
            if (toks.size() != 2)
                throw Error(ErrorKind::Syntax, "line " + std::to_string(lno) + ": bad .model");
            n.name = toks[1];
            saw_model = true;
            ++i;
        } else if (kw == ".inputs") {
            n.inputs.insert(n.inputs.end(), toks.begin() + 1, toks.end());
            ++i;
        } else if (kw == ".outputs") {
            n.outputs.insert(n.outputs.end(), toks.begin() + 1, toks.end());
            ++i;
        } else if (kw == ".names") {
            if (toks.size() < 2)
                throw Error(ErrorKind::Syntax, "line " + std::to_string(lno) + ": bad .names");
            Gate g;
            g.output = toks.back();
            g.inputs.assign(toks.begin() + 1, toks.end() - 1);
            ++i;
            std::vector<std::string> cubes;
            while (i < lines.size()) {
                auto [cl, cline] = lines[i];
                auto ct = split_ws(cline);
                if (ct[0][0] == '.') break;
                std::string cube;
                if (g.inputs.empty()) {
                    if (ct.size() != 1)
                        throw Error(ErrorKind::Syntax,
                                    "line " + std::to_string(cl) + ": bad cube");
                    cube = ct[0];
                } else {
                    if (ct.size() != 2 || ct[0].size() != g.inputs.size())
                        throw Error(ErrorKind::Syntax,
                                    "line " + std::to_string(cl) + ": bad cube");
                    cube = ct[0] + " " + ct[1];
                }
                cubes.push_back(cube);
                ++i;
            }
            g.op = match_cover((int)g.inputs.size(), cubes, lno);
            raw.push_back(std::move(g));
        } else if (kw == ".end") {
            saw_end = true;
            ++i;
        } else {
            throw Error(ErrorKind::Syntax,
                        "line " + std::to_string(lno) + ": unsupported construct " + kw);
        }
    }
    if (!saw_model)
        throw Error(ErrorKind::Syntax, "missing .model");

    // Order-independent input: stable topological sort (file order among
    // ready gates), with cycle and driver checks.
    std::unordered_map<std::string, int> defined;
    for (const auto& in : n.inputs) {
        if (defined.count(in)) throw Error(ErrorKind::MultiplyDriven, "net driven twice: " + in);
        defined[in] = 1;
    }
    for (const auto& g : raw) {
        if (defined.count(g.output))
            throw Error(ErrorKind::MultiplyDriven, "net driven twice: " + g.output);
        defined[g.output] = 1;
    }
    for (const auto& g : raw)
        for (const auto& in : g.inputs)
            if (!defined.count(in)) throw Error(ErrorKind::UndefinedNet, "undefined net: " + in);
    for (const auto& o : n.outputs)
        if (!defined.count(o)) throw Error(ErrorKind::UndefinedNet, "undefined net: " + o);

    std::unordered_map<std::string, int> ready;
    for (const auto& in : n.inputs) ready[in] = 1;
    std::vector<bool> placed(raw.size(), false);
    for (size_t placed_cnt = 0; placed_cnt < raw.size();) {
        bool progress = false;
        for (size_t g = 0; g < raw.size(); ++g) {
            if (placed[g]) continue;
            bool ok = true;
            for (const auto& in : raw[g].inputs)
                if (!ready.count(in)) { ok = false; break; }
            if (ok) {
                n.gates.push_back(raw[g]);
                ready[raw[g].output] = 1;
                placed[g] = true;
                ++placed_cnt;
                progress = true;
            }
        }
        if (!progress) throw Error(ErrorKind::Cycle, "combinational cycle");
    }
    n.validate();
    return n;
}

std::string emit_blif(const Netlist& n) {
    std::ostringstream os;
    os << ".model " << (n.name.empty() ? "top" : n.name) << "\n";
    os << ".inputs";
    for (const auto& i : n.inputs) os << " " << i;
    os << "\n.outputs";
    for (const auto& o : n.outputs) os << " " << o;
    os << "\n";
    for (const auto& g : n.gates) {
        os << ".names";
        for (const auto& in : g.inputs) os << " " << in;
        os << " " << g.output << "\n";
        switch (g.op) {
            case GateOp::And: os << "11 1\n"; break;
            case GateOp::Or: os << "1- 1\n-1 1\n"; break;
            case GateOp::Xor: os << "10 1\n01 1\n"; break;
            case GateOp::Xnor: os << "11 1\n00 1\n"; break;
            case GateOp::Nand: os << "0- 1\n-0 1\n"; break;
            case GateOp::Nor: os << "00 1\n"; break;
            case GateOp::Not: os << "0 1\n"; break;
            case GateOp::Buf: os << "1 1\n"; break;
            case GateOp::Const1: os << "1\n"; break;
            case GateOp::Const0: break;
        }
    }
    os << ".end\n";
    return os.str();
}

}  // namespace relaxec
