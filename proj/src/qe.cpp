#include "relaxec/qe.hpp"

#include <algorithm>
#include <unordered_set>

#include "relaxec/encode.hpp"
#include "relaxec/error.hpp"
#include "relaxec/sat.hpp"

namespace relaxec {

namespace {

std::vector<Lit> blocking_clause(const std::vector<uint8_t>& model, const std::vector<int>& vars) {
    std::vector<Lit> c;
    c.reserve(vars.size());
    for (int v : vars) c.push_back(model[v] ? -v : v);
    return c;
}

}  // namespace

CnfFormula eliminate(const CnfFormula& f, const std::vector<int>& w, const QeOptions& opts) {
    std::unordered_set<int> wset(w.begin(), w.end());
    std::vector<int> free_vars;
    for (int v : f.vars_used())
        if (!wset.count(v)) free_vars.push_back(v);

    CnfFormula result;
    for (int v : free_vars) {
        result.ensure_var(v);
        if (!f.name_of(v).empty()) result.set_name(v, f.name_of(v));
    }

    if (free_vars.empty()) {
        if (sat::solve(f).unsat()) result.add_clause(std::vector<Lit>{});
        return result;
    }

    // Image collection: enumerate models, project to the free variables,
    // block each projected point.
    sat::Solver enumerator;
    enumerator.add_formula(f);
    std::vector<std::vector<Lit>> blockers;
    uint64_t points = 0;
    for (;;) {
        auto r = enumerator.solve();
        if (r.unsat()) break;
        auto block = blocking_clause(r.model, free_vars);
        blockers.push_back(block);
        enumerator.add_clause(block);
        if (++points > opts.max_models)
            throw Error(ErrorKind::Budget, "eliminate: image enumeration budget exceeded");
    }
    if (points == 0) {
        result.add_clause(std::vector<Lit>{});  // constant 0
        return result;
    }

    // Counterexample loop: find an assignment outside the image that the
    // result does not yet exclude, widen its blocking clause while it stays
    // implied by f, and add it.
    sat::Solver spurious;  // R so far + one blocker per image point
    for (int v : free_vars) spurious.ensure_vars(v);
    for (const auto& b : blockers) spurious.add_clause(b);

    sat::Solver impl;  // for f -> clause checks
    impl.add_formula(f);

    for (;;) {
        auto r = spurious.solve();
        if (r.unsat()) break;
        std::vector<Lit> c = blocking_clause(r.model, free_vars);
        // greedy literal dropping, fixed order for reproducibility
        for (size_t i = 0; i < c.size();) {
            std::vector<Lit> cand = c;
            cand.erase(cand.begin() + i);
            std::vector<Lit> assume;
            for (Lit l : cand) assume.push_back(-l);
            if (impl.solve(assume).unsat())
                c = cand;  // still implied: keep the wider clause
            else
                ++i;
        }
        result.add_clause(c);
        spurious.add_clause(c);
        if (result.size() > opts.max_clauses)
            throw Error(ErrorKind::Budget, "eliminate: clause budget exceeded");
    }

    // subsumption cleanup + canonical order
    std::vector<Clause> kept;
    for (const Clause& c : result.clauses()) {
        bool sub = false;
        for (const Clause& k : kept)
            if (subsumes(k, c)) { sub = true; break; }
        if (sub) continue;
        std::erase_if(kept, [&](const Clause& k) { return subsumes(c, k); });
        kept.push_back(c);
    }
    CnfFormula out;
    for (int v : free_vars) {
        out.ensure_var(v);
        if (!f.name_of(v).empty()) out.set_name(v, f.name_of(v));
    }
    for (const Clause& c : kept) out.add_clause(c);
    out.canonicalize();
    return out;
}

CnfFormula cut_image(const Netlist& n1, const Netlist& n2, int cut_index,
                     const QeOptions& opts) {
    CutPlan plan = level_cuts(n1, n2);
    if (cut_index < 0 || cut_index > plan.levels)
        throw Error(ErrorKind::Range, "cut_image: bad cut index");

    // Sub-netlists below the cut. Gate outputs above level cut_index are
    // dropped; outputs of the slices are irrelevant here.
    auto slice = [&](const Netlist& n) {
        auto lvl = topo_levels(n);
        Netlist s;
        s.name = n.name;
        s.inputs = n.inputs;
        for (const auto& g : n.gates)
            if (lvl.at(g.output) <= cut_index) s.gates.push_back(g);
        return s;
    };
    Netlist m1 = slice(n1), m2 = slice(n2);

    VarAllocator alloc;
    CnfFormula fm = tseitin_encode(m1, alloc, "1:");
    CnfFormula fm2 = tseitin_encode(m2, alloc, "2:");
    fm.append(fm2);

    std::vector<int> x1, x2;
    for (const auto& in : n1.inputs) x1.push_back(alloc.var_of("1:" + in));
    for (const auto& in : n2.inputs) x2.push_back(alloc.var_of("2:" + in));
    fm.append(eq_formula(x1, x2));

    std::unordered_set<int> cut_vars;
    for (const auto& net : plan.cuts[cut_index]) {
        int v = alloc.var_of(net);
        if (v) cut_vars.insert(v);
    }
    std::vector<int> w;
    for (int v : fm.vars_used())
        if (!cut_vars.count(v)) w.push_back(v);
    return eliminate(fm, w, opts);
}

}  // namespace relaxec
