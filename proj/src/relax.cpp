#include "relaxec/relax.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "relaxec/encode.hpp"
#include "relaxec/error.hpp"
#include "relaxec/pqe.hpp"
#include "relaxec/sat.hpp"

namespace relaxec {

namespace {

PqeSolution pqe_with_fallback(const PqeProblem& p) {
    try {
        return pqe_solve(p);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::Budget) throw;
        return pqe_oracle(p);
    }
}

// Blocking clause for the projection of a model onto vars.
std::vector<Lit> block_of(const std::vector<uint8_t>& model, const std::vector<int>& vars) {
    std::vector<Lit> c;
    for (int v : vars) c.push_back(model[v] ? -v : v);
    return c;
}

// Widens `c` while it stays implied by the formula behind `impl`.
Clause widen_implied(sat::Solver& impl, std::vector<Lit> c) {
    for (size_t i = 0; i < c.size() && c.size() > 1;) {
        std::vector<Lit> cand = c;
        cand.erase(cand.begin() + i);
        std::vector<Lit> assume;
        for (Lit l : cand) assume.push_back(-l);
        if (impl.solve(assume).unsat())
            c = cand;
        else
            ++i;
    }
    auto norm = normalize_clause(c);
    return *norm;
}

void insert_filtered(CnfFormula& f, const Clause& c) {
    for (const Clause& k : f.clauses())
        if (subsumes(k, c)) return;
    CnfFormula next;
    next.ensure_var(f.num_vars());
    for (const Clause& k : f.clauses())
        if (!subsumes(c, k)) next.add_clause(k);
    next.add_clause(c);
    f = next;
}

}  // namespace

CnfFormula relax_general(const RelaxSplit& split) {
    PqeProblem p;
    int nv = std::max(split.e.num_vars(), split.s_rlx.num_vars());
    p.a.ensure_var(nv);
    p.b.ensure_var(nv);
    for (const Clause& c : split.e.clauses()) p.a.add_clause(c);
    for (const Clause& c : split.s_rlx.clauses()) p.b.add_clause(c);
    p.w = split.x;
    return pqe_with_fallback(p).astar;
}

CnfFormula extract_interpolant(const CnfFormula& a, const CnfFormula& b,
                               const std::vector<int>& x, const std::vector<int>& y,
                               const std::vector<int>& z) {
    (void)x;
    int nv = std::max(a.num_vars(), b.num_vars());
    CnfFormula ab;
    ab.ensure_var(nv);
    ab.append(a);
    ab.append(b);
    if (sat::solve(ab).sat())
        throw Error(ErrorKind::NotUnsat, "extract_interpolant: A ^ B is satisfiable");
    (void)z;

    // Block every B-producible Y-point; widen each block while it stays
    // implied by A. Since A ^ B is unsatisfiable and X, Z are disjoint,
    // A-producible and B-producible Y-points never meet.
    sat::Solver b_enum;
    b_enum.ensure_vars(nv);
    for (const Clause& c : b.clauses()) b_enum.add_clause(c.lits);
    sat::Solver a_impl;
    a_impl.ensure_vars(nv);
    for (const Clause& c : a.clauses()) a_impl.add_clause(c.lits);

    CnfFormula h;
    h.ensure_var(nv);
    uint64_t guard = 0;
    for (;;) {
        auto r = b_enum.solve();
        if (r.unsat()) break;
        auto block = block_of(r.model, y);
        b_enum.add_clause(block);
        Clause c = widen_implied(a_impl, block);
        insert_filtered(h, c);
        if (++guard > (1ull << 22))
            throw Error(ErrorKind::Budget, "extract_interpolant: enumeration budget");
    }
    h.canonicalize();
    return h;
}

BrokenInterpolant broken_interpolant(const CnfFormula& a, const CnfFormula& b,
                                     const std::vector<int>& x, const std::vector<int>& y,
                                     const std::vector<int>& z) {
    (void)x;
    int nv = std::max(a.num_vars(), b.num_vars());
    sat::Solver b_enum;
    b_enum.ensure_vars(nv);
    for (const Clause& c : b.clauses()) b_enum.add_clause(c.lits);

    sat::Solver ab_sat;
    ab_sat.ensure_vars(nv);
    for (const Clause& c : a.clauses()) ab_sat.add_clause(c.lits);
    for (const Clause& c : b.clauses()) ab_sat.add_clause(c.lits);

    sat::Solver a_impl;
    a_impl.ensure_vars(nv);
    for (const Clause& c : a.clauses()) a_impl.add_clause(c.lits);

    BrokenInterpolant out;
    out.h.ensure_var(nv);
    uint64_t guard = 0;
    for (;;) {
        auto r = b_enum.solve();
        if (r.unsat()) break;
        auto block = block_of(r.model, y);
        b_enum.add_clause(block);
        std::vector<Lit> point;
        for (int v : y) point.push_back(r.model[v] ? v : -v);
        if (ab_sat.solve(point).sat()) continue;  // reachable in A ^ B: keep
        Clause c = widen_implied(a_impl, block);
        insert_filtered(out.h, c);
        if (++guard > (1ull << 22))
            throw Error(ErrorKind::Budget, "broken_interpolant: enumeration budget");
    }
    out.h.canonicalize();

    // counterexample for the broken implication: a model of H ^ B
    sat::Solver hb;
    hb.ensure_vars(nv);
    for (const Clause& c : out.h.clauses()) hb.add_clause(c.lits);
    for (const Clause& c : b.clauses()) hb.add_clause(c.lits);
    auto r = hb.solve();
    if (r.sat()) {
        std::vector<Lit> cex;
        for (int v : y) cex.push_back(r.model[v] ? v : -v);
        for (int v : z) cex.push_back(r.model[v] ? v : -v);
        out.counterexample = cex;
        // constructive extension: fix Y, solve A ^ B, then put the
        // counterexample's Z back (X and Z do not interact)
        std::vector<Lit> ypoint;
        for (int v : y) ypoint.push_back(r.model[v] ? v : -v);
        auto rext = ab_sat.solve(ypoint);
        if (rext.sat()) {
            std::vector<uint8_t> ext = rext.model;
            for (int v : z) ext[v] = r.model[v];
            out.extension = ext;
        }
    }
    return out;
}

CutSplit make_cut_split(const Netlist& n1, const Netlist& n2, int cut_index) {
    CutPlan plan = level_cuts(n1, n2);
    if (cut_index <= 0 || cut_index >= plan.levels)
        throw Error(ErrorKind::Range, "make_cut_split: cut must be internal");
    Miter m = build_miter(n1, n2, &plan);

    CutSplit s;
    s.num_vars = m.formulas.num_vars;
    s.eq = m.formulas.eq;
    s.neq = m.formulas.neq;
    s.cut_vars = m.roles.cut_vars[cut_index];
    s.f_m.ensure_var(s.num_vars);
    s.f_l.ensure_var(s.num_vars);
    auto add = [&](const Netlist& n, const std::string& prefix) {
        for (const auto& g : n.gates) {
            int L = plan.level_of.at(prefix + g.output);
            int zv = m.alloc.var_of(prefix + g.output);
            int av = g.inputs.size() > 0 ? m.alloc.var_of(prefix + g.inputs[0]) : 0;
            int bv = g.inputs.size() > 1 ? m.alloc.var_of(prefix + g.inputs[1]) : 0;
            append_gate_clauses(L <= cut_index ? s.f_m : s.f_l, g.op, zv, av, bv);
        }
    };
    add(n1, "1:");
    add(n2, "2:");

    // name-paired cut equality, used by the separating-relaxation report
    CnfFormula eq_cut;
    eq_cut.ensure_var(s.num_vars);
    for (const auto& net : plan.cuts[cut_index]) {
        if (net.rfind("1:", 0) != 0) continue;
        int v1 = m.alloc.var_of(net);
        int v2 = m.alloc.var_of("2:" + net.substr(2));
        if (v2 == 0) continue;
        eq_cut.add_clause({-v1, v2});
        eq_cut.add_clause({v1, -v2});
    }
    s.eq_cut = eq_cut;
    return s;
}

RelaxationReport compare_relaxations(const CutSplit& split) {
    RelaxationReport rep;
    std::unordered_set<int> cut(split.cut_vars.begin(), split.cut_vars.end());

    auto w_from = [&](std::initializer_list<const CnfFormula*> fs) {
        std::set<int> w;
        for (const CnfFormula* f : fs)
            for (int v : f->vars_used())
                if (!cut.count(v)) w.insert(v);
        return std::vector<int>(w.begin(), w.end());
    };

    // replacing: take EQ ^ F_M out of exists W[alpha]
    PqeProblem pr;
    pr.a.ensure_var(split.num_vars);
    pr.b.ensure_var(split.num_vars);
    pr.a.append(split.eq);
    pr.a.append(split.f_m);
    pr.b.append(split.f_l);
    pr.b.append(split.neq);
    pr.w = w_from({&split.eq, &split.f_m, &split.f_l, &split.neq});
    PqeSolution sr = pqe_with_fallback(pr);
    rep.h_replacing = sr.astar;
    rep.replacing_verified = verify_pqe_solution(pr, sr);

    // separating: take EQ alone out
    PqeProblem ps;
    ps.a.ensure_var(split.num_vars);
    ps.b.ensure_var(split.num_vars);
    ps.a.append(split.eq);
    ps.b.append(split.f_m);
    ps.b.append(split.f_l);
    ps.b.append(split.neq);
    ps.w = pr.w;
    PqeSolution ss = pqe_with_fallback(ps);
    rep.h_separating = ss.astar;
    rep.separating_verified = verify_pqe_solution(ps, ss);

    // Is EQ(Cut', Cut'') certified as a separating boundary formula from
    // EQ ^ F_M alone?
    if (split.eq_cut.size()) {
        PqeProblem pm;
        pm.a.ensure_var(split.num_vars);
        pm.b.ensure_var(split.num_vars);
        pm.a.append(split.eq);
        pm.b.append(split.f_m);
        pm.w = w_from({&split.eq, &split.f_m});
        PqeSolution cand;
        cand.astar = split.eq_cut;
        rep.eq_cut_separating_from_fm_alone = verify_pqe_solution(pm, cand);
    }

    // Does H^r play the interpolant role against the cone above the cut?
    CnfFormula hr_fl;
    hr_fl.ensure_var(split.num_vars);
    hr_fl.append(rep.h_replacing);
    hr_fl.append(split.f_l);
    hr_fl.append(split.neq);
    rep.replacing_blocks_fl = sat::solve(hr_fl).unsat();
    return rep;
}

}  // namespace relaxec
