#include "relaxec/eclor.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <random>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "relaxec/error.hpp"
#include "relaxec/sat.hpp"

namespace relaxec {

const char* ec_status_name(EcStatus s) {
    switch (s) {
        case EcStatus::Equivalent: return "Equivalent";
        case EcStatus::Inequivalent: return "Inequivalent";
        case EcStatus::ConstantDegenerate: return "ConstantDegenerate";
        case EcStatus::Unknown: return "Unknown";
    }
    return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

struct RunBudget {
    uint64_t iters_left;
    Clock::time_point deadline;
    bool has_deadline;

    explicit RunBudget(const EcOptions& o)
        : iters_left(o.redund_iters),
          deadline(Clock::now() + std::chrono::milliseconds(o.timeout_ms)),
          has_deadline(o.timeout_ms > 0) {}

    void tick() {
        if (iters_left-- == 0) throw Error(ErrorKind::Budget, "redundancy budget exceeded");
        if (has_deadline && Clock::now() > deadline)
            throw Error(ErrorKind::Budget, "timeout");
    }
};

// Greedy widening of a falsified cut clause: drop literals while the clause
// stays implied by ext (H_prev ^ F_Mi). Several deterministic drop orders
// are tried and the shortest survivor wins; clauses still wider than 3 get
// a bounded scan over small sub-clauses.
Clause widen_clause(sat::Solver& ext, const std::vector<Lit>& base, uint64_t seed) {
    auto implied = [&](const std::vector<Lit>& cl) {
        std::vector<Lit> assume;
        for (Lit l : cl) assume.push_back(-l);
        return ext.solve(assume).unsat();
    };
    auto greedy = [&](std::vector<Lit> order) {
        std::vector<Lit> cur(base);
        for (Lit drop : order) {
            if (cur.size() == 1) break;
            std::vector<Lit> cand;
            for (Lit l : cur)
                if (l != drop) cand.push_back(l);
            if (cand.size() != cur.size() && implied(cand)) cur = cand;
        }
        return cur;
    };

    std::vector<std::vector<Lit>> orders;
    orders.push_back(base);
    orders.emplace_back(base.rbegin(), base.rend());
    std::mt19937_64 rng(seed * 2654435761u + 17);
    for (int s = 0; s < 2; ++s) {
        std::vector<Lit> o = base;
        std::shuffle(o.begin(), o.end(), rng);
        orders.push_back(o);
    }
    std::vector<Lit> best;
    for (auto& o : orders) {
        auto cur = greedy(o);
        if (best.empty() || cur.size() < best.size()) best = cur;
        if (best.size() <= 2) break;
    }
    // bounded search for a short implied sub-clause of the original cube
    if (best.size() > 3 && base.size() <= 24) {
        size_t n = base.size();
        bool found = false;
        for (size_t i = 0; i < n && !found; ++i) {
            for (size_t j = i + 1; j < n && !found; ++j) {
                for (size_t k = j + 1; k < n && !found; ++k) {
                    std::vector<Lit> cand = {base[i], base[j], base[k]};
                    if (implied(cand)) {
                        best = cand;
                        found = true;
                    }
                }
            }
        }
    }
    auto norm = normalize_clause(best);
    assert(norm.has_value());
    return *norm;
}

// Stateful residue search for one cut: enumerates cut assignments
// producible by F_Mi that satisfy H so far, blocks the extendable ones
// permanently, and turns the rest into widened evidence clauses.
struct RedundEngine {
    sat::Solver enumerator;  // F_Mi + H_cur + blocks
    sat::Solver ext;         // H_prev ^ F_Mi
    std::vector<int> cut_vars;
    RunBudget* budget;
    uint64_t seed;

    RedundEngine(const CnfFormula& h_prev, const CnfFormula& f_mi,
                 const std::vector<int>& cut, RunBudget* b, uint64_t sd)
        : cut_vars(cut), budget(b), seed(sd) {
        enumerator.ensure_vars(f_mi.num_vars());
        ext.ensure_vars(std::max(f_mi.num_vars(), h_prev.num_vars()));
        for (const Clause& c : f_mi.clauses()) {
            enumerator.add_clause(c.lits);
            ext.add_clause(c.lits);
        }
        for (const Clause& c : h_prev.clauses()) ext.add_clause(c.lits);
    }

    void add_h_clause(const Clause& c) { enumerator.add_clause(c.lits); }

    std::optional<Clause> next() {
        for (;;) {
            budget->tick();
            auto r = enumerator.solve();
            if (r.unsat()) return std::nullopt;  // terminated
            std::vector<Lit> point, block;
            for (int v : cut_vars) {
                point.push_back(r.model[v] ? v : -v);
                block.push_back(r.model[v] ? -v : v);
            }
            if (ext.solve(point).sat()) {
                enumerator.add_clause(block);  // extendable: never look again
                continue;
            }
            Clause c = widen_clause(ext, block, seed);
            return c;
        }
    }
};

CnfFormula fm_slice_of(const Miter& m, const Netlist& n1, const Netlist& n2,
                       const CutPlan& plan, int lo, int hi) {
    CnfFormula f;
    f.ensure_var(m.formulas.num_vars);
    auto add = [&](const Netlist& n, const std::string& prefix) {
        for (const auto& g : n.gates) {
            int L = plan.level_of.at(prefix + g.output);
            if (L <= lo || L > hi) continue;
            int z = m.alloc.var_of(prefix + g.output);
            int a = g.inputs.size() > 0 ? m.alloc.var_of(prefix + g.inputs[0]) : 0;
            int b = g.inputs.size() > 1 ? m.alloc.var_of(prefix + g.inputs[1]) : 0;
            append_gate_clauses(f, g.op, z, a, b);
        }
    };
    add(n1, "1:");
    add(n2, "2:");
    return f;
}

std::vector<int> w_of(const CnfFormula& fm, const CnfFormula& h_prev,
                      const std::vector<int>& cut_vars) {
    std::unordered_set<int> cut(cut_vars.begin(), cut_vars.end());
    std::set<int> w;
    for (int v : fm.vars_used())
        if (!cut.count(v)) w.insert(v);
    for (int v : h_prev.vars_used())
        if (!cut.count(v)) w.insert(v);
    return {w.begin(), w.end()};
}

bool mentions_any(const Clause& c, const std::unordered_set<int>& vars) {
    for (Lit l : c.lits)
        if (vars.count(lit_var(l))) return true;
    return false;
}

struct ChainBuilder {
    const EcOptions& opts;
    bool star;
    BoundaryChain chain;
    RunBudget budget;

    ChainBuilder(const Netlist& n1, const Netlist& n2, EcMode mode, const EcOptions& o,
                 bool star_mode)
        : opts(o), star(star_mode), budget(o) {
        chain.n1 = n1;
        chain.n2 = n2;
        chain.mode = mode;
        chain.cuts = level_cuts(n1, n2);
        chain.miter = build_miter(n1, n2, &chain.cuts);

        ChainStep h0;
        h0.cut = 0;
        h0.h = chain.miter.formulas.eq;
        h0.certified = true;
        for (const Clause& c : h0.h.clauses())
            h0.width_max = std::max(h0.width_max, (int)c.size());
        chain.steps.push_back(std::move(h0));
    }

    // Adds c to the step formula unless subsumed; drops clauses c subsumes.
    static bool insert_clause(CnfFormula& h, const Clause& c) {
        for (const Clause& k : h.clauses())
            if (subsumes(k, c)) return false;
        CnfFormula next;
        next.ensure_var(h.num_vars());
        for (const Clause& k : h.clauses())
            if (!subsumes(c, k)) next.add_clause(k);
        next.add_clause(c);
        h = next;
        return true;
    }

    void preseed(int i, ChainStep& step) {
        // Relatives heuristic: for every cut gate g' of N' nobody talks
        // about yet, take short clauses out of a local instance built from
        // the H_{i-1} clauses over its inputs and its relatives' gates.
        const CnfFormula& h_prev = chain.steps[i - 1].h;
        auto l1 = topo_levels(chain.n1), l2 = topo_levels(chain.n2);
        struct GateInfo {
            int out;
            std::string name;
            std::vector<int> ins;
        };
        std::vector<GateInfo> side2;
        for (const auto& g : chain.n2.gates) {
            if (l2.at(g.output) != i) continue;
            GateInfo gi;
            gi.out = chain.miter.alloc.var_of("2:" + g.output);
            gi.name = g.output;
            for (const auto& in : g.inputs)
                gi.ins.push_back(chain.miter.alloc.var_of("2:" + in));
            side2.push_back(gi);
        }
        for (const auto& g : chain.n1.gates) {
            if (l1.at(g.output) != i) continue;
            int v1 = chain.miter.alloc.var_of("1:" + g.output);
            bool covered = false;
            for (const Clause& c : step.h.clauses())
                if (c.contains_var(v1)) { covered = true; break; }
            if (covered) continue;

            std::unordered_set<int> my_ins;
            for (const auto& in : g.inputs)
                my_ins.insert(chain.miter.alloc.var_of("1:" + in));
            // relatives: one shared H_{i-1} clause over input variables
            std::vector<const GateInfo*> relatives;
            std::unordered_set<int> rel_outs = {v1};
            std::unordered_set<int> cluster_ins = my_ins;
            for (const auto& gi : side2) {
                std::unordered_set<int> their(gi.ins.begin(), gi.ins.end());
                bool related = false;
                for (const Clause& c : h_prev.clauses()) {
                    if (mentions_any(c, my_ins) && mentions_any(c, their)) {
                        related = true;
                        break;
                    }
                }
                if (related) {
                    relatives.push_back(&gi);
                    rel_outs.insert(gi.out);
                    cluster_ins.insert(their.begin(), their.end());
                }
            }
            if (relatives.empty()) continue;

            PqeProblem p;
            p.a.ensure_var(chain.miter.formulas.num_vars);
            p.b.ensure_var(chain.miter.formulas.num_vars);
            for (const Clause& c : h_prev.clauses())
                if (mentions_any(c, cluster_ins)) p.a.add_clause(c);
            auto add_gate = [&](const Netlist& n, const std::string& prefix,
                                const std::string& out) {
                for (const auto& gg : n.gates) {
                    if (gg.output != out) continue;
                    int z = chain.miter.alloc.var_of(prefix + gg.output);
                    int a = gg.inputs.size() > 0
                                ? chain.miter.alloc.var_of(prefix + gg.inputs[0]) : 0;
                    int b = gg.inputs.size() > 1
                                ? chain.miter.alloc.var_of(prefix + gg.inputs[1]) : 0;
                    append_gate_clauses(p.b, gg.op, z, a, b);
                }
            };
            add_gate(chain.n1, "1:", g.output);
            for (const auto* gi : relatives) add_gate(chain.n2, "2:", gi->name);
            std::unordered_set<int> keep = rel_outs;
            std::set<int> w;
            for (int v : p.a.vars_used())
                if (!keep.count(v)) w.insert(v);
            for (int v : p.b.vars_used())
                if (!keep.count(v)) w.insert(v);
            p.w.assign(w.begin(), w.end());

            try {
                PqeOptions po;
                po.max_steps = std::min<uint64_t>(opts.pqe_steps, 20000);
                PqeSolution sol = pqe_solve(p, po);
                for (const Clause& c : sol.astar.clauses()) insert_clause(step.h, c);
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::Budget) throw;
            }
        }
    }

    void build_step(int i) {
        const CnfFormula& h_prev = chain.steps[i - 1].h;
        int lo = chain.mode == EcMode::Exact ? 0 : std::max(0, i - opts.approx_window);
        CnfFormula fm = fm_slice_of(chain.miter, chain.n1, chain.n2, chain.cuts, lo, i);

        ChainStep step;
        step.cut = i;
        step.h.ensure_var(chain.miter.formulas.num_vars);
        step.fm_level_lo = lo;
        step.fm_level_hi = i;
        step.fm_clauses = fm.size();
        const std::vector<int>& cut_vars = chain.miter.roles.cut_vars[i];
        step.w = w_of(fm, h_prev, cut_vars);

        if (star) preseed(i, step);

        // Primary route: take H_{i-1} out of the quantifiers with the pqe
        // engine, then keep the evidence clauses the cut still needs. Wide
        // cuts go straight to the residue search below.
        bool solved = false;
        if (cut_vars.size() <= 16 && fm.size() + h_prev.size() <= 300) {
            PqeProblem p;
            p.a.ensure_var(chain.miter.formulas.num_vars);
            p.b.ensure_var(chain.miter.formulas.num_vars);
            for (const Clause& c : h_prev.clauses()) p.a.add_clause(c);
            for (const Clause& c : fm.clauses()) p.b.add_clause(c);
            p.w = step.w;
            try {
                PqeOptions po;
                po.max_steps = opts.pqe_steps;
                PqeSolution sol = pqe_solve(p, po);
                sat::Solver need;  // F_Mi ^ H_cur, queried per candidate
                need.ensure_vars(chain.miter.formulas.num_vars);
                for (const Clause& c : fm.clauses()) need.add_clause(c.lits);
                for (const Clause& c : step.h.clauses()) need.add_clause(c.lits);
                sat::Solver ext;  // H_{i-1} ^ F_Mi, for clause widening
                ext.ensure_vars(chain.miter.formulas.num_vars);
                for (const Clause& c : fm.clauses()) ext.add_clause(c.lits);
                for (const Clause& c : h_prev.clauses()) ext.add_clause(c.lits);
                for (const Clause& c : sol.astar.clauses()) {
                    std::vector<Lit> assume;
                    for (Lit l : c.lits) assume.push_back(-l);
                    for (;;) {
                        budget.tick();
                        auto rr = need.solve(assume);
                        if (rr.unsat()) break;
                        // widen from the full falsified cube of the witness
                        // point: short implied sub-clauses live inside it
                        std::vector<Lit> cube;
                        for (int v : cut_vars) cube.push_back(rr.model[v] ? -v : v);
                        Clause wc = widen_clause(ext, cube, opts.seed);
                        if (insert_clause(step.h, wc)) {
                            need.add_clause(wc.lits);
                            ++step.terminated_after;
                        } else {
                            need.add_clause(cube);  // step off this point
                        }
                    }
                }
                solved = true;
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::Budget) throw;
            }
        }

        if (!solved) {
            RedundEngine eng(h_prev, fm, cut_vars, &budget, opts.seed);
            for (const Clause& c : step.h.clauses()) eng.add_h_clause(c);
            for (;;) {
                auto c = eng.next();
                if (!c) break;
                if (insert_clause(step.h, *c)) {
                    eng.add_h_clause(*c);
                    ++step.terminated_after;
                } else {
                    // subsumed evidence cannot shrink the residue further;
                    // block it via the stronger clause already present
                    eng.add_h_clause(*c);
                }
            }
        }

        for (const Clause& c : step.h.clauses())
            step.width_max = std::max(step.width_max, (int)c.size());
        step.certified = true;
        chain.steps.push_back(std::move(step));
    }

    BoundaryChain run(int up_to_cut = -1) {
        chain.complete = true;
        int last = up_to_cut < 0 ? chain.cuts.levels : std::min(up_to_cut, chain.cuts.levels);
        for (int i = 1; i <= last; ++i) {
            try {
                build_step(i);
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::Budget) throw;
                chain.complete = false;
                break;
            }
        }
        return std::move(chain);
    }
};

}  // namespace

PqeProblem BoundaryChain::step_problem(int i) const {
    if (i <= 0 || i >= (int)steps.size())
        throw Error(ErrorKind::Range, "step_problem: bad index");
    PqeProblem p;
    p.a.ensure_var(miter.formulas.num_vars);
    p.b.ensure_var(miter.formulas.num_vars);
    for (const Clause& c : steps[i - 1].h.clauses()) p.a.add_clause(c);
    CnfFormula fm = fm_slice_of(miter, n1, n2, cuts, steps[i].fm_level_lo,
                                steps[i].fm_level_hi);
    for (const Clause& c : fm.clauses()) p.b.add_clause(c);
    p.w = steps[i].w;
    return p;
}

std::optional<Clause> redund_check(const CnfFormula& h_prev, const CnfFormula& h_cur,
                                   const CnfFormula& f_mi, const std::vector<int>& w,
                                   const std::vector<int>& cut_vars, const EcOptions& opts) {
    // pqe route first: any solution clause the current H does not yet imply
    // on the producible space is evidence.
    if (cut_vars.size() <= 16 && f_mi.size() + h_prev.size() <= 300) {
        PqeProblem p;
        int nv = std::max({h_prev.num_vars(), h_cur.num_vars(), f_mi.num_vars()});
        p.a.ensure_var(nv);
        p.b.ensure_var(nv);
        for (const Clause& c : h_prev.clauses()) p.a.add_clause(c);
        for (const Clause& c : f_mi.clauses()) p.b.add_clause(c);
        p.w = w;
        try {
            PqeOptions po;
            po.max_steps = opts.pqe_steps;
            PqeSolution sol = pqe_solve(p, po);
            sat::Solver need;
            need.ensure_vars(nv);
            for (const Clause& c : f_mi.clauses()) need.add_clause(c.lits);
            for (const Clause& c : h_cur.clauses()) need.add_clause(c.lits);
            sat::Solver ext;
            ext.ensure_vars(nv);
            for (const Clause& c : f_mi.clauses()) ext.add_clause(c.lits);
            for (const Clause& c : h_prev.clauses()) ext.add_clause(c.lits);
            for (const Clause& c : sol.astar.clauses()) {
                std::vector<Lit> assume;
                for (Lit l : c.lits) assume.push_back(-l);
                auto rr = need.solve(assume);
                if (rr.sat()) {
                    std::vector<Lit> cube;
                    for (int v : cut_vars) cube.push_back(rr.model[v] ? -v : v);
                    return widen_clause(ext, cube, opts.seed);
                }
            }
            return std::nullopt;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::Budget) throw;
        }
    }
    RunBudget budget(opts);
    CnfFormula fm_and_h;
    fm_and_h.ensure_var(std::max(f_mi.num_vars(), h_cur.num_vars()));
    fm_and_h.append(f_mi);
    RedundEngine eng(h_prev, fm_and_h, cut_vars, &budget, opts.seed);
    for (const Clause& c : h_cur.clauses()) eng.add_h_clause(c);
    return eng.next();
}

BoundaryChain build_boundary_chain(const Netlist& n1, const Netlist& n2, EcMode mode,
                                   const EcOptions& opts, int up_to_cut) {
    ChainBuilder b(n1, n2, mode, opts, false);
    return b.run(up_to_cut);
}

namespace {

EcVerdict decide_from_chain(BoundaryChain chain, bool star_mode, const EcOptions& opts) {
    EcVerdict v;
    v.chain = std::move(chain);
    const BoundaryChain& ch = v.chain;
    if (!ch.complete) {
        v.status = EcStatus::Unknown;
        v.note = "budget exhausted with partial chain";
        return v;
    }
    const MiterFormulas& F = ch.miter.formulas;
    v.output_boundary = ch.steps.back().h;

    auto h_at = [&](int b1, int b2) {
        std::vector<uint8_t> assign(F.num_vars + 1, 0);
        assign[F.z1] = (uint8_t)b1;
        assign[F.z2] = (uint8_t)b2;
        return v.output_boundary.eval(assign);
    };

    sat::Solver rlx(opts.seed);
    rlx.ensure_vars(F.num_vars);
    for (const Clause& c : F.g_rlx.clauses()) rlx.add_clause(c.lits);
    if (opts.sat_conflicts) rlx.set_conflict_budget(opts.sat_conflicts);

    bool any_open = false;       // some difference point passes H_k
    bool all_open_unsat = true;  // ... but none is realizable in G_rlx
    for (auto [b1, b2] : {std::pair{1, 0}, std::pair{0, 1}}) {
        if (!h_at(b1, b2)) continue;
        any_open = true;
        std::vector<Lit> assume = {b1 ? F.z1 : -F.z1, b2 ? F.z2 : -F.z2};
        auto r = rlx.solve(assume);
        if (r.status == sat::Status::Budget) {
            v.status = EcStatus::Unknown;
            v.note = "sat budget exhausted on the output check";
            return v;
        }
        if (r.sat()) {
            all_open_unsat = false;
            if (ch.mode == EcMode::Exact && !star_mode) {
                v.status = EcStatus::Inequivalent;
                v.witness = r.model;
                return v;
            }
            // approximate boundary formulas cannot prove inequivalence
            v.status = EcStatus::Unknown;
            v.note = "approximate H admits a realizable difference point";
            return v;
        }
    }
    if (!any_open) {
        v.status = EcStatus::Equivalent;
        return v;
    }
    if (all_open_unsat) {
        // the open points are spurious: one side is a constant
        v.status = EcStatus::ConstantDegenerate;
        std::string note;
        sat::Solver s1(opts.seed), s2(opts.seed);
        s1.ensure_vars(F.num_vars);
        s2.ensure_vars(F.num_vars);
        for (const Clause& c : F.f_n1.clauses()) s1.add_clause(c.lits);
        for (const Clause& c : F.f_n2.clauses()) s2.add_clause(c.lits);
        if (s1.solve({F.z1}).unsat()) note += "N' is constant 0; ";
        if (s1.solve({-F.z1}).unsat()) note += "N' is constant 1; ";
        if (s2.solve({F.z2}).unsat()) note += "N'' is constant 0; ";
        if (s2.solve({-F.z2}).unsat()) note += "N'' is constant 1; ";
        v.note = note.empty() ? "open output points unrealizable" : note;
        return v;
    }
    v.status = EcStatus::Unknown;
    return v;
}

std::pair<Netlist, Netlist> align_pair(const Netlist& n1, const Netlist& n2) {
    Netlist p1 = prune_dead(n1), p2 = prune_dead(n2);
    int depth = std::max(max_level(p1), max_level(p2));
    return {bufferize(p1, depth), bufferize(p2, depth)};
}

}  // namespace

EcVerdict ec_lor(const Netlist& n1, const Netlist& n2, EcMode mode, const EcOptions& opts) {
    auto t0 = Clock::now();
    auto [b1, b2] = align_pair(n1, n2);
    ChainBuilder builder(b1, b2, mode, opts, false);
    BoundaryChain chain = builder.run();
    auto t1 = Clock::now();
    EcVerdict v = decide_from_chain(std::move(chain), false, opts);
    auto t2 = Clock::now();
    v.build_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    v.decide_ms = std::chrono::duration<double, std::milli>(t2 - t1).count();
    return v;
}

EcVerdict ec_lor_star(const Netlist& n1, const Netlist& n2, const EcOptions& opts) {
    auto t0 = Clock::now();
    auto [b1, b2] = align_pair(n1, n2);
    ChainBuilder builder(b1, b2, EcMode::Approximate, opts, opts.star_preseed);
    BoundaryChain chain = builder.run();
    auto t1 = Clock::now();
    EcVerdict v = decide_from_chain(std::move(chain), true, opts);
    auto t2 = Clock::now();
    v.build_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    v.decide_ms = std::chrono::duration<double, std::milli>(t2 - t1).count();
    return v;
}

// ---------------------------------------------------------------------------
// Boundary validation and the beta route
// ---------------------------------------------------------------------------

VerifiedBoundary eq_cut_boundary(const Netlist& n1, const Netlist& n2, int cut_index) {
    CutPlan plan = level_cuts(n1, n2);
    if (cut_index <= 0 || cut_index > plan.levels)
        throw Error(ErrorKind::Range, "eq_cut_boundary: bad cut index");
    Miter m = build_miter(n1, n2, &plan);

    VerifiedBoundary vb;
    vb.cut = cut_index;

    // pair the cut nets by name
    std::vector<std::pair<int, int>> pairs;
    bool name_matched = true;
    for (const auto& net : plan.cuts[cut_index]) {
        if (net.rfind("1:", 0) != 0) continue;
        std::string base = net.substr(2);
        int v1 = m.alloc.var_of(net);
        int v2 = m.alloc.var_of("2:" + base);
        if (v2 == 0) { name_matched = false; break; }
        pairs.emplace_back(v1, v2);
    }
    size_t side2 = 0;
    for (const auto& net : plan.cuts[cut_index])
        if (net.rfind("2:", 0) == 0) ++side2;
    if (!name_matched || pairs.size() != side2) {
        vb.verified = false;
        vb.method = "unpaired";
        return vb;
    }

    vb.h.ensure_var(m.formulas.num_vars);
    for (auto [a, b] : pairs) {
        vb.h.add_clause({-a, b});
        vb.h.add_clause({a, -b});
    }

    // identical sub-circuits below the cut: the equivalence-cut corollary
    auto l1 = topo_levels(n1), l2 = topo_levels(n2);
    auto below = [&](const Netlist& n, const std::unordered_map<std::string, int>& lvl) {
        std::vector<std::tuple<std::string, GateOp, std::vector<std::string>>> gs;
        for (const auto& g : n.gates)
            if (lvl.at(g.output) <= cut_index) gs.emplace_back(g.output, g.op, g.inputs);
        std::sort(gs.begin(), gs.end());
        return gs;
    };
    if (n1.inputs == n2.inputs && below(n1, l1) == below(n2, l2)) {
        vb.verified = true;
        vb.method = "corollary-identical";
        return vb;
    }
    if (n1.inputs.size() <= 16 && n2.inputs.size() <= 16) {
        try {
            vb.verified = validate_boundary(vb.h, cut_index, n1, n2);
            vb.method = "exhaustive-sim";
            return vb;
        } catch (const Error&) {
        }
    }
    vb.verified = false;
    vb.method = "unverified";
    return vb;
}

std::optional<BetaWitness> prove_inequivalence_via_beta(const Netlist& n1, const Netlist& n2,
                                                        const VerifiedBoundary& hb,
                                                        const EcOptions& opts) {
    if (!hb.verified)
        throw Error(ErrorKind::BoundaryNotVerified,
                    "prove_inequivalence_via_beta: boundary certificate absent");
    CutPlan plan = level_cuts(n1, n2);
    Miter m = build_miter(n1, n2, &plan);
    CnfFormula beta = m.formulas.beta(hb.h);
    sat::Solver s(opts.seed);
    s.ensure_vars(beta.num_vars());
    for (const Clause& c : beta.clauses()) s.add_clause(c.lits);
    if (opts.sat_conflicts) s.set_conflict_budget(opts.sat_conflicts);
    auto r = s.solve();
    if (r.status == sat::Status::Budget)
        throw Error(ErrorKind::Budget, "prove_inequivalence_via_beta: sat budget");
    if (r.unsat()) return std::nullopt;
    BetaWitness w;
    w.model = r.model;
    for (int v : m.roles.cut_vars[hb.cut])
        w.cut_assignment.push_back(r.model[v] ? v : -v);
    return w;
}

std::optional<std::vector<uint8_t>> extend_beta_witness(const Netlist& n1, const Netlist& n2,
                                                        const VerifiedBoundary& hb,
                                                        const BetaWitness& w) {
    (void)hb;
    CutPlan plan = level_cuts(n1, n2);
    Miter m = build_miter(n1, n2, &plan);
    sat::Solver s;
    s.ensure_vars(m.formulas.num_vars);
    for (const Clause& c : m.formulas.g.clauses()) s.add_clause(c.lits);
    auto r = s.solve(w.cut_assignment);
    if (r.unsat()) return std::nullopt;
    return r.model;
}

bool validate_boundary(const CnfFormula& h, int cut_index, const Netlist& n1,
                       const Netlist& n2) {
    CutPlan plan = level_cuts(n1, n2);
    if (cut_index < 0 || cut_index > plan.levels)
        throw Error(ErrorKind::Range, "validate_boundary: bad cut index");
    if (n1.inputs.size() > 16 || n2.inputs.size() > 16 ||
        n1.inputs.size() != n2.inputs.size())
        throw Error(ErrorKind::Bound, "validate_boundary: input bound exceeded");
    Miter m = build_miter(n1, n2, &plan);

    SimView sv1(n1), sv2(n2);
    std::vector<int> cut1_slots, cut2_slots, cut1_vars, cut2_vars;
    for (const auto& net : plan.cuts[cut_index]) {
        std::string base = net.substr(2);
        if (net.rfind("1:", 0) == 0) {
            cut1_slots.push_back(sv1.slot_of(base));
            cut1_vars.push_back(m.alloc.var_of(net));
        } else {
            cut2_slots.push_back(sv2.slot_of(base));
            cut2_vars.push_back(m.alloc.var_of(net));
        }
    }
    if (cut1_slots.size() > 63 || cut2_slots.size() > 63)
        throw Error(ErrorKind::Bound, "validate_boundary: cut too wide");

    size_t nin = n1.inputs.size();
    uint64_t npat = 1ull << nin;

    // producible cut words per side, batched 64 patterns at a time
    auto collect = [&](const SimView& sv, const std::vector<int>& slots) {
        std::vector<uint64_t> words(npat);
        std::vector<uint64_t> in(sv.num_inputs()), nets;
        for (uint64_t base = 0; base < npat; base += 64) {
            uint64_t lanes = std::min<uint64_t>(64, npat - base);
            for (int i = 0; i < sv.num_inputs(); ++i) {
                uint64_t word = 0;
                for (uint64_t t = 0; t < lanes; ++t)
                    if (((base + t) >> i) & 1) word |= 1ull << t;
                in[i] = word;
            }
            sv.run64(in, nets);
            for (uint64_t t = 0; t < lanes; ++t) {
                uint64_t key = 0;
                for (size_t s = 0; s < slots.size(); ++s)
                    if ((nets[slots[s]] >> t) & 1) key |= 1ull << s;
                words[base + t] = key;
            }
        }
        return words;
    };
    std::vector<uint64_t> k1 = collect(sv1, cut1_slots);
    std::vector<uint64_t> k2 = collect(sv2, cut2_slots);

    std::vector<uint8_t> assign(m.formulas.num_vars + 1, 0);
    auto eval_h = [&](uint64_t key1, uint64_t key2) {
        for (size_t s = 0; s < cut1_vars.size(); ++s) assign[cut1_vars[s]] = (key1 >> s) & 1;
        for (size_t s = 0; s < cut2_vars.size(); ++s) assign[cut2_vars[s]] = (key2 >> s) & 1;
        return h.eval(assign);
    };

    // (a) shared-input executions must satisfy H
    std::set<std::pair<uint64_t, uint64_t>> eq_pairs;
    for (uint64_t x = 0; x < npat; ++x) {
        if (!eval_h(k1[x], k2[x])) return false;
        eq_pairs.emplace(k1[x], k2[x]);
    }

    // (b) H must be 0 on free-input-only pairs
    std::set<uint64_t> q1(k1.begin(), k1.end()), q2(k2.begin(), k2.end());
    if (q1.size() * q2.size() > (1ull << 24))
        throw Error(ErrorKind::Bound, "validate_boundary: product bound exceeded");
    for (uint64_t a : q1)
        for (uint64_t b : q2) {
            if (eq_pairs.count({a, b})) continue;
            if (eval_h(a, b)) return false;
        }
    return true;
}

// ---------------------------------------------------------------------------
// Reporting
// ---------------------------------------------------------------------------

std::string verdict_to_json(const EcVerdict& v, bool with_timings) {
    nlohmann::json j;
    j["schema"] = "relaxec-verdict-v1";
    j["status"] = ec_status_name(v.status);
    if (!v.note.empty()) j["note"] = v.note;
    if (v.witness) {
        nlohmann::json w;
        const auto& F = v.chain.miter.formulas;
        w["z1"] = (int)(*v.witness)[F.z1];
        w["z2"] = (int)(*v.witness)[F.z2];
        nlohmann::json in1 = nlohmann::json::object(), in2 = nlohmann::json::object();
        for (size_t i = 0; i < v.chain.n1.inputs.size(); ++i)
            in1[v.chain.n1.inputs[i]] = (int)(*v.witness)[F.x1[i]];
        for (size_t i = 0; i < v.chain.n2.inputs.size(); ++i)
            in2[v.chain.n2.inputs[i]] = (int)(*v.witness)[F.x2[i]];
        w["inputs1"] = in1;
        w["inputs2"] = in2;
        j["witness"] = w;
    }
    nlohmann::json chain = nlohmann::json::array();
    for (const auto& s : v.chain.steps) {
        nlohmann::json step;
        step["cut"] = s.cut;
        step["clauses"] = s.h.size();
        step["width_max"] = s.width_max;
        step["terminated_after"] = s.terminated_after;
        chain.push_back(step);
    }
    j["chain"] = chain;
    if (with_timings) {
        j["timings"] = {{"build_ms", v.build_ms}, {"decide_ms", v.decide_ms}};
    }
    return j.dump(2) + "\n";
}

}  // namespace relaxec
