#include "relaxec/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "relaxec/error.hpp"
#include "relaxec/qe.hpp"
#include "relaxec/sat.hpp"

namespace relaxec {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// Core of the array multiplier: partial products per column, compressed
// with half/full adders. Returns the product bit nets (size 2k).
std::vector<std::string> mlp_core(Netlist& n, const std::vector<std::string>& a,
                                  const std::vector<std::string>& b) {
    int k = (int)a.size();
    std::vector<std::vector<std::string>> col(2 * k);
    int id = 0;
    auto gate = [&](GateOp op, const std::string& x, const std::string& y) {
        std::string out = "t" + std::to_string(id++);
        n.gates.push_back({out, op, {x, y}});
        return out;
    };
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            std::string pp = "pp_" + std::to_string(i) + "_" + std::to_string(j);
            n.gates.push_back({pp, GateOp::And, {a[i], b[j]}});
            col[i + j].push_back(pp);
        }
    std::vector<std::string> product(2 * k);
    for (int c = 0; c < 2 * k; ++c) {
        while (col[c].size() >= 3) {
            std::string x = col[c][0], y = col[c][1], z = col[c][2];
            col[c].erase(col[c].begin(), col[c].begin() + 3);
            std::string t = gate(GateOp::Xor, x, y);
            std::string s = gate(GateOp::Xor, t, z);
            std::string c1 = gate(GateOp::And, x, y);
            std::string c2 = gate(GateOp::And, t, z);
            std::string carry = gate(GateOp::Or, c1, c2);
            col[c].push_back(s);
            if (c + 1 < 2 * k) col[c + 1].push_back(carry);
        }
        if (col[c].size() == 2) {
            std::string x = col[c][0], y = col[c][1];
            col[c].clear();
            std::string s = gate(GateOp::Xor, x, y);
            std::string carry = gate(GateOp::And, x, y);
            col[c].push_back(s);
            if (c + 1 < 2 * k) col[c + 1].push_back(carry);
        }
        if (col[c].empty()) {
            std::string zero = "zero" + std::to_string(c);
            n.gates.push_back({zero, GateOp::Const0, {}});
            col[c].push_back(zero);
        }
        product[c] = col[c][0];
    }
    return product;
}

}  // namespace

Netlist gen_mlp(int k) {
    if (k < 2 || k > 16) throw Error(ErrorKind::Range, "gen_mlp: k out of range [2,16]");
    Netlist n;
    n.name = "mlp" + std::to_string(k);
    std::vector<std::string> a, b;
    for (int i = 0; i < k; ++i) {
        a.push_back("a" + std::to_string(i));
        n.inputs.push_back(a.back());
    }
    for (int i = 0; i < k; ++i) {
        b.push_back("b" + std::to_string(i));
        n.inputs.push_back(b.back());
    }
    auto product = mlp_core(n, a, b);
    n.outputs = {product[k - 1]};  // median bit
    n.validate();
    return prune_dead(n);
}

HGatedPair gen_hgated_pair(int k) {
    if (k < 2 || k > 16) throw Error(ErrorKind::Range, "gen_hgated_pair: k out of range");
    HGatedPair pair;

    std::vector<std::string> a, b;
    for (int i = 0; i < k; ++i) a.push_back("a" + std::to_string(i));
    for (int i = 0; i < k; ++i) b.push_back("b" + std::to_string(i));
    std::vector<std::string> inputs = {"h"};
    inputs.insert(inputs.end(), a.begin(), a.end());
    inputs.insert(inputs.end(), b.begin(), b.end());

    // N1: every primary input gated by h, then the multiplier core.
    pair.n1.name = "hmlp" + std::to_string(k) + "_ingate";
    pair.n1.inputs = inputs;
    std::vector<std::string> ga, gb;
    for (int i = 0; i < k; ++i) {
        ga.push_back("ag" + std::to_string(i));
        pair.n1.gates.push_back({ga.back(), GateOp::And, {"h", a[i]}});
    }
    for (int i = 0; i < k; ++i) {
        gb.push_back("bg" + std::to_string(i));
        pair.n1.gates.push_back({gb.back(), GateOp::And, {"h", b[i]}});
    }
    auto p1 = mlp_core(pair.n1, ga, gb);
    pair.n1.outputs = {p1[k - 1]};
    pair.n1.validate();
    pair.n1 = prune_dead(pair.n1);

    // N2: the multiplier with its output gated by h. Its inputs pass
    // through buffers named like N1's gating gates, which puts the two
    // cores on the same topological levels: every cut then pairs each N1
    // net with its same-name N2 net (plus the buffered h), keeping the
    // determining sets at size two.
    pair.n2.name = "hmlp" + std::to_string(k) + "_outgate";
    pair.n2.inputs = inputs;
    std::vector<std::string> ba, bb;
    for (int i = 0; i < k; ++i) {
        ba.push_back("ag" + std::to_string(i));
        pair.n2.gates.push_back({ba.back(), GateOp::Buf, {a[i]}});
    }
    for (int i = 0; i < k; ++i) {
        bb.push_back("bg" + std::to_string(i));
        pair.n2.gates.push_back({bb.back(), GateOp::Buf, {b[i]}});
    }
    auto p2 = mlp_core(pair.n2, ba, bb);
    pair.n2.gates.push_back({"zg", GateOp::And, {"h", p2[k - 1]}});
    pair.n2.outputs = {"zg"};
    pair.n2.validate();
    pair.n2 = prune_dead(pair.n2);

    // S(v'): every net of N1 is fixed by {h, same-name net of N2} (equal
    // when h=1, a constant when h=0).
    for (const auto& g : pair.n1.gates) pair.sim.s[g.output] = {"h", g.output};
    pair.sim.max_size = 2;
    return pair;
}

Netlist inject_bug(const Netlist& n, int min_level, uint64_t seed) {
    auto lvl = topo_levels(n);
    std::vector<size_t> candidates;
    for (size_t i = 0; i < n.gates.size(); ++i) {
        if (gate_arity(n.gates[i].op) != 2) continue;
        if (lvl.at(n.gates[i].output) > min_level) candidates.push_back(i);
    }
    if (candidates.empty())
        throw Error(ErrorKind::NoGateAboveLevel, "inject_bug: no binary gate above level");

    static const GateOp binops[] = {GateOp::And, GateOp::Or,  GateOp::Xor,
                                    GateOp::Nand, GateOp::Nor, GateOp::Xnor};
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + 1);
    for (int attempt = 0; attempt < 64; ++attempt) {
        size_t pick = candidates[rng() % candidates.size()];
        GateOp old = n.gates[pick].op;
        GateOp neu;
        do {
            neu = binops[rng() % 6];
        } while (neu == old);
        Netlist out = n;
        out.gates[pick].op = neu;
        out.name = n.name + "_bug";
        // must provably differ from the original
        Miter m = build_miter(n, out);
        if (sat::solve(m.formulas.alpha).sat()) return out;
    }
    throw Error(ErrorKind::Range, "inject_bug: no distinguishing mutation found");
}

// ---------------------------------------------------------------------------
// Experiments
// ---------------------------------------------------------------------------

std::string ExperimentReport::to_csv() const {
    std::ostringstream os;
    os << "id";
    for (const auto& c : columns) os << "," << c;
    os << ",verdict,alpha_checked\n";
    for (const auto& r : rows) {
        os << r.id;
        for (double v : r.values) {
            os << ",";
            if (v == (int64_t)v)
                os << (int64_t)v;
            else
                os << v;
        }
        os << "," << r.verdict << "," << (r.alpha_checked ? 1 : 0) << "\n";
    }
    return os.str();
}

std::string ExperimentReport::to_json() const {
    nlohmann::json j;
    j["schema"] = "relaxec-experiment-v1";
    j["name"] = name;
    j["columns"] = columns;
    nlohmann::json rws = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json row;
        row["id"] = r.id;
        row["values"] = r.values;
        row["verdict"] = r.verdict;
        row["alpha_checked"] = r.alpha_checked;
        if (!r.note.empty()) row["note"] = r.note;
        rws.push_back(row);
    }
    j["rows"] = rws;
    j["summary"] = summary;
    return j.dump(2) + "\n";
}

namespace {

void maybe_dump(const std::string& dir, const std::string& file, const Netlist& n) {
    if (dir.empty()) return;
    std::ofstream os(dir + "/" + file);
    os << emit_blif(n);
}

double median(std::vector<double> v) {
    if (v.empty()) return 0;
    std::sort(v.begin(), v.end());
    size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : (v[m - 1] + v[m]) / 2.0;
}

ExperimentReport run_table1(const ExperimentParams& params) {
    ExperimentReport rep;
    rep.name = "table1";
    rep.columns = {"k", "quant_vars", "free_vars", "image_clauses", "image_ms",
                   "boundary_clauses", "boundary_ms"};
    double ratio_product = 1.0;
    int ratio_count = 0;
    for (int k = params.k_min; k <= params.k_max; ++k) {
        Netlist m = gen_mlp(k);
        Netlist b1 = bufferize(m), b2 = bufferize(m);
        maybe_dump(params.dump_dir, "mlp" + std::to_string(k) + ".blif", m);

        ExperimentRow row;
        row.id = "mlp" + std::to_string(k);
        CutPlan plan = level_cuts(b1, b2);
        size_t cut_size = plan.cuts[1].size();
        size_t quant = plan.cuts[0].size();

        auto t0 = Clock::now();
        CnfFormula image = cut_image(b1, b2, 1);
        double image_ms = ms_since(t0);

        t0 = Clock::now();
        BoundaryChain chain = build_boundary_chain(b1, b2, EcMode::Exact, params.ec, 1);
        double boundary_ms = ms_since(t0);
        if (!chain.complete) {
            row.verdict = "budget";
            row.values = {(double)k, (double)quant, (double)cut_size,
                          (double)image.size(), image_ms, -1, boundary_ms};
            rep.rows.push_back(row);
            continue;
        }
        const CnfFormula& h = chain.h(1);
        row.values = {(double)k, (double)quant, (double)cut_size, (double)image.size(),
                      image_ms, (double)h.size(), boundary_ms};
        row.verdict = h.size() < image.size() ? "H<R" : "H>=R";
        // identical copies: alpha must be unsat
        Miter mi = build_miter(b1, b2);
        row.alpha_checked = sat::solve(mi.formulas.alpha).unsat();
        rep.rows.push_back(row);
        if (h.size() > 0) {
            ratio_product *= (double)image.size() / (double)h.size();
            ++ratio_count;
        }
    }
    if (ratio_count)
        rep.summary["ratio_geomean"] = std::pow(ratio_product, 1.0 / ratio_count);
    return rep;
}

ExperimentReport run_table2(const ExperimentParams& params) {
    ExperimentReport rep;
    rep.name = "table2";
    rep.columns = {"k", "vars", "clauses", "cuts", "time_ms", "width_max"};
    for (int k = params.k_min; k <= params.k_max; ++k) {
        HGatedPair pair = gen_hgated_pair(k);
        maybe_dump(params.dump_dir, pair.n1.name + ".blif", pair.n1);
        maybe_dump(params.dump_dir, pair.n2.name + ".blif", pair.n2);

        ExperimentRow row;
        row.id = "hmlp" + std::to_string(k);
        auto t0 = Clock::now();
        EcVerdict v = ec_lor_star(pair.n1, pair.n2, params.ec);
        double t = ms_since(t0);
        int width = 0;
        for (size_t i = 1; i < v.chain.steps.size(); ++i)
            width = std::max(width, v.chain.steps[i].width_max);
        const auto& F = v.chain.miter.formulas;
        row.values = {(double)k, (double)F.num_vars, (double)F.alpha.size(),
                      (double)v.chain.cuts.levels, t, (double)width};
        row.verdict = ec_status_name(v.status);
        Miter mi = build_miter(v.chain.n1, v.chain.n2);
        bool a_sat = sat::solve(mi.formulas.alpha).sat();
        row.alpha_checked = (v.status == EcStatus::Equivalent && !a_sat) ||
                            (v.status != EcStatus::Equivalent);
        rep.rows.push_back(row);
    }
    return rep;
}

ExperimentReport run_table3(const ExperimentParams& params) {
    ExperimentReport rep;
    rep.name = "table3";
    rep.columns = {"seed", "alpha_sat", "alpha_decisions", "beta_sat", "beta_decisions"};
    int k = params.bug_k;
    Netlist good = gen_mlp(k);
    Netlist gb = bufferize(good);
    maybe_dump(params.dump_dir, "mlp" + std::to_string(k) + ".blif", good);

    rep.rows.resize(params.seeds);
    std::vector<double> alpha_dec, beta_dec;
    std::mutex mu;

    auto run_one = [&](int s) {
        ExperimentRow row;
        row.id = "seed" + std::to_string(s);
        Netlist bad = inject_bug(gb, params.cut, params.seed + s);
        int depth = std::max(max_level(gb), max_level(bad));
        Netlist b1 = bufferize(gb, depth), b2 = bufferize(bad, depth);
        maybe_dump(params.dump_dir,
                   "mlp" + std::to_string(k) + "_bug" + std::to_string(s) + ".blif", bad);

        VerifiedBoundary hb = eq_cut_boundary(b1, b2, params.cut);
        if (!hb.verified) {
            row.verdict = "boundary-unverified";
            std::lock_guard<std::mutex> lock(mu);
            rep.rows[s] = row;
            return;
        }
        Miter m = build_miter(b1, b2);

        sat::Solver alpha(params.seed);
        alpha.ensure_vars(m.formulas.num_vars);
        for (const Clause& c : m.formulas.alpha.clauses()) alpha.add_clause(c.lits);
        auto ra = alpha.solve();

        CnfFormula beta = m.formulas.beta(hb.h);
        sat::Solver bs(params.seed);
        bs.ensure_vars(beta.num_vars());
        for (const Clause& c : beta.clauses()) bs.add_clause(c.lits);
        auto rb = bs.solve();

        row.values = {(double)s, ra.sat() ? 1.0 : 0.0, (double)ra.stats.decisions,
                      rb.sat() ? 1.0 : 0.0, (double)rb.stats.decisions};
        row.verdict = rb.sat() ? "Inequivalent" : "Equivalent";
        row.alpha_checked = ra.sat() == rb.sat();
        std::lock_guard<std::mutex> lock(mu);
        rep.rows[s] = row;
        alpha_dec.push_back((double)ra.stats.decisions);
        beta_dec.push_back((double)rb.stats.decisions);
    };

    if (params.jobs <= 1) {
        for (int s = 0; s < params.seeds; ++s) run_one(s);
    } else {
        std::vector<std::thread> pool;
        std::atomic<int> next{0};
        for (int j = 0; j < params.jobs; ++j)
            pool.emplace_back([&] {
                for (int s = next++; s < params.seeds; s = next++) run_one(s);
            });
        for (auto& t : pool) t.join();
    }

    int solved_a = 0, solved_b = 0;
    for (const auto& r : rep.rows) {
        if (r.values.size() < 5) continue;
        solved_a += r.values[1] == 1.0;
        solved_b += r.values[3] == 1.0;
    }
    rep.summary["alpha_solved"] = solved_a;
    rep.summary["beta_solved"] = solved_b;
    rep.summary["alpha_median_decisions"] = median(alpha_dec);
    rep.summary["beta_median_decisions"] = median(beta_dec);
    rep.summary["beta_median_le_alpha"] =
        median(beta_dec) <= median(alpha_dec) ? 1.0 : 0.0;
    return rep;
}

}  // namespace

ExperimentReport run_experiment(const std::string& name, const ExperimentParams& params) {
    if (name == "table1") return run_table1(params);
    if (name == "table2") return run_table2(params);
    if (name == "table3") return run_table3(params);
    throw Error(ErrorKind::Usage, "run_experiment: unknown experiment " + name);
}

}  // namespace relaxec
