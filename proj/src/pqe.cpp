#include "relaxec/pqe.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <unordered_set>

#include "relaxec/error.hpp"
#include "relaxec/sat.hpp"

namespace relaxec {

std::vector<int> PqeProblem::free_vars() const {
    std::unordered_set<int> wset(w.begin(), w.end());
    std::unordered_set<int> seen;
    std::vector<int> out;
    auto scan = [&](const CnfFormula& f) {
        for (int v : f.vars_used())
            if (!wset.count(v) && seen.insert(v).second) out.push_back(v);
    };
    scan(a);
    scan(b);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> PqeProblem::quantified_vars() const {
    std::unordered_set<int> wset(w.begin(), w.end());
    std::unordered_set<int> seen;
    std::vector<int> out;
    auto scan = [&](const CnfFormula& f) {
        for (int v : f.vars_used())
            if (wset.count(v) && seen.insert(v).second) out.push_back(v);
    };
    scan(a);
    scan(b);
    std::sort(out.begin(), out.end());
    return out;
}

int PqeProblem::num_vars() const { return std::max(a.num_vars(), b.num_vars()); }

DSequent join_dsequents(const DSequent& d0, const DSequent& d1, int y) {
    if (d0.target != d1.target)
        throw Error(ErrorKind::Range, "join_dsequents: different target clauses");
    auto find = [&](const DSequent& d) -> Lit {
        for (Lit l : d.condition)
            if (lit_var(l) == y) return l;
        return 0;
    };
    Lit l0 = find(d0), l1 = find(d1);
    if (l0 != -y || l1 != y)
        throw Error(ErrorKind::Range, "join_dsequents: conditions must split on y");
    std::vector<Lit> rest0, rest1;
    for (Lit l : d0.condition)
        if (lit_var(l) != y) rest0.push_back(l);
    for (Lit l : d1.condition)
        if (lit_var(l) != y) rest1.push_back(l);
    if (rest0 != rest1)
        throw Error(ErrorKind::Range, "join_dsequents: conditions disagree outside y");
    DSequent out;
    out.condition = rest0;
    out.target = d0.target;
    return out;
}

// ---------------------------------------------------------------------------
// Oracle
// ---------------------------------------------------------------------------

PqeSolution pqe_oracle(const PqeProblem& p) {
    std::vector<int> v_vars = p.free_vars();
    std::vector<int> w_vars = p.quantified_vars();
    if (v_vars.size() > 20 || v_vars.size() + w_vars.size() > 24)
        throw Error(ErrorKind::Bound, "pqe_oracle: enumeration bound exceeded");

    PqeSolution sol;
    for (int v : v_vars) sol.astar.ensure_var(v);
    if (p.a.size() == 0) return sol;  // nothing to take out

    size_t nv = v_vars.size(), nw = w_vars.size();
    std::vector<uint8_t> exists_ab(1ull << nv, 0), exists_b(1ull << nv, 0);
    std::vector<uint8_t> assign(p.num_vars() + 1, 0);
    for (uint64_t vi = 0; vi < (1ull << nv); ++vi) {
        for (size_t i = 0; i < nv; ++i) assign[v_vars[i]] = (vi >> i) & 1;
        for (uint64_t wi = 0; wi < (1ull << nw); ++wi) {
            for (size_t i = 0; i < nw; ++i) assign[w_vars[i]] = (wi >> i) & 1;
            if (p.b.eval(assign)) {
                exists_b[vi] = 1;
                if (p.a.eval(assign)) {
                    exists_ab[vi] = 1;
                    break;
                }
            }
        }
    }

    // Astar(v) = 1 where exists_ab, 0 where exists_b only, 1 on don't-cares.
    // Emit a blocking clause per 0-point, then widen greedily: a literal may
    // be dropped while the clause still excludes no 1-required point.
    auto excludes_required = [&](const std::vector<Lit>& clause) {
        // enumerate the subcube falsifying `clause`
        std::vector<int> free_positions;
        std::vector<uint8_t> fixed(nv, 2);
        for (Lit l : clause) {
            size_t pos = std::lower_bound(v_vars.begin(), v_vars.end(), lit_var(l)) -
                         v_vars.begin();
            fixed[pos] = l < 0 ? 1 : 0;  // literal false
        }
        for (size_t i = 0; i < nv; ++i)
            if (fixed[i] == 2) free_positions.push_back((int)i);
        for (uint64_t m = 0; m < (1ull << free_positions.size()); ++m) {
            uint64_t vi = 0;
            for (size_t i = 0; i < nv; ++i)
                if (fixed[i] != 2) vi |= (uint64_t)fixed[i] << i;
            for (size_t j = 0; j < free_positions.size(); ++j)
                vi |= ((m >> j) & 1) << free_positions[j];
            if (exists_ab[vi]) return true;
        }
        return false;
    };

    std::vector<uint8_t> point(p.num_vars() + 1, 0);
    for (uint64_t vi = 0; vi < (1ull << nv); ++vi) {
        if (!exists_b[vi] || exists_ab[vi]) continue;
        for (size_t i = 0; i < nv; ++i) point[v_vars[i]] = (vi >> i) & 1;
        if (sol.astar.size() && !sol.astar.eval(point))
            continue;  // already excluded by an earlier widened clause
        std::vector<Lit> c;
        for (size_t i = 0; i < nv; ++i)
            c.push_back(((vi >> i) & 1) ? -v_vars[i] : v_vars[i]);
        for (size_t i = 0; i < c.size();) {
            std::vector<Lit> cand = c;
            cand.erase(cand.begin() + i);
            if (!excludes_required(cand))
                c = cand;
            else
                ++i;
        }
        sol.astar.add_clause(c);
    }

    // subsumption cleanup + canonical order
    CnfFormula out;
    for (int v : v_vars) out.ensure_var(v);
    std::vector<Clause> kept;
    for (const Clause& c : sol.astar.clauses()) {
        bool sub = false;
        for (const Clause& k : kept)
            if (subsumes(k, c)) { sub = true; break; }
        if (sub) continue;
        std::erase_if(kept, [&](const Clause& k) { return subsumes(c, k); });
        kept.push_back(c);
    }
    for (const Clause& c : kept) out.add_clause(c);
    out.canonicalize();
    sol.astar = out;
    return sol;
}

// ---------------------------------------------------------------------------
// Branching solver
// ---------------------------------------------------------------------------

namespace {

// Clause origin. Target clauses are A-tagged W-clauses: they must be made
// redundant. Lemma clauses are implied by the non-target part alone and
// never enter A*.
enum class Tag : uint8_t { A, B, Lemma };

struct PqeEngine {
    struct PClause {
        Clause c;
        Tag tag;
        bool target;  // tag == A and contains a quantified variable
    };

    const PqeProblem& prob;
    const PqeOptions& opts;
    PqeStats stats;

    std::vector<PClause> db;
    std::vector<uint8_t> is_w;      // 1-based var classification
    int nvars;

    // trail: assigned literals; reason = db index for BCP, -1 for decisions
    std::vector<uint8_t> assign;    // 0/1/2=undef, 1-based
    std::vector<Lit> trail;
    std::vector<int> reason_of;     // parallel to trail
    std::vector<int> trail_pos;     // 1-based var -> trail index or -1
    std::vector<Lit> decisions;

    sat::Solver full_sat;   // all clauses
    sat::Solver nt_sat;     // non-target clauses only
    uint64_t steps = 0;

    struct Result {
        bool proved;
        Clause cert;  // falsified non-target clause when !proved
    };

    explicit PqeEngine(const PqeProblem& p, const PqeOptions& o) : prob(p), opts(o) {
        nvars = p.num_vars();
        is_w.assign(nvars + 1, 0);
        for (int v : p.w)
            if (v <= nvars) is_w[v] = 1;
        assign.assign(nvars + 1, 2);
        trail_pos.assign(nvars + 1, -1);
        full_sat.ensure_vars(nvars);
        nt_sat.ensure_vars(nvars);
        for (const Clause& c : p.a.clauses()) add_db(c, Tag::A);
        for (const Clause& c : p.b.clauses()) add_db(c, Tag::B);
    }

    bool has_w(const Clause& c) const {
        for (Lit l : c.lits)
            if (is_w[lit_var(l)]) return true;
        return false;
    }

    int add_db(const Clause& c, Tag tag) {
        bool target = tag == Tag::A && has_w(c);
        db.push_back({c, tag, target});
        full_sat.add_clause(c.lits);
        if (!target) nt_sat.add_clause(c.lits);
        return (int)db.size() - 1;
    }

    uint8_t value(Lit l) const {
        uint8_t v = assign[lit_var(l)];
        if (v == 2) return 2;
        return (l > 0) == (v == 1) ? 1 : 0;
    }

    void push(Lit l, int reason) {
        assign[lit_var(l)] = l > 0;
        trail_pos[lit_var(l)] = (int)trail.size();
        trail.push_back(l);
        reason_of.push_back(reason);
        if (reason < 0) decisions.push_back(l);
    }

    void pop_to(size_t n) {
        while (trail.size() > n) {
            Lit l = trail.back();
            if (reason_of.back() < 0) decisions.pop_back();
            assign[lit_var(l)] = 2;
            trail_pos[lit_var(l)] = -1;
            trail.pop_back();
            reason_of.pop_back();
        }
    }

    // Unit propagation over non-target clauses. Returns the db index of a
    // falsified non-target clause or -1.
    int bcp() {
        bool changed = true;
        while (changed) {
            changed = false;
            for (size_t ci = 0; ci < db.size(); ++ci) {
                const PClause& pc = db[ci];
                if (pc.target) continue;
                Lit unit = 0;
                bool sat_clause = false;
                int unassigned = 0;
                for (Lit l : pc.c.lits) {
                    uint8_t v = value(l);
                    if (v == 1) { sat_clause = true; break; }
                    if (v == 2) {
                        ++unassigned;
                        unit = l;
                        if (unassigned > 1) break;
                    }
                }
                if (sat_clause) continue;
                if (unassigned == 0) return (int)ci;
                if (unassigned == 1) {
                    push(unit, (int)ci);
                    changed = true;
                }
            }
        }
        return -1;
    }

    // Resolves the falsified clause back through BCP reasons until only
    // decision literals remain; returns that all-decision clause.
    Clause analyze(int falsified) {
        std::vector<uint8_t> seen(nvars + 1, 0);
        std::vector<Lit> out;
        int open = 0;
        for (Lit l : db[falsified].c.lits) {
            seen[lit_var(l)] = 1;
            ++open;
        }
        for (int ti = (int)trail.size() - 1; ti >= 0 && open > 0; --ti) {
            int v = lit_var(trail[ti]);
            if (!seen[v]) continue;
            seen[v] = 0;
            --open;
            if (reason_of[ti] < 0) {
                out.push_back(-trail[ti]);  // falsified decision literal
            } else {
                for (Lit l : db[reason_of[ti]].c.lits) {
                    if (lit_var(l) == v || seen[lit_var(l)]) continue;
                    if (assign[lit_var(l)] == 2) continue;  // cannot happen
                    seen[lit_var(l)] = 1;
                    ++open;
                }
            }
        }
        auto norm = normalize_clause(out);
        assert(norm.has_value());
        return *norm;
    }

    int find_falsified_target() const {
        for (size_t ci = 0; ci < db.size(); ++ci) {
            if (!db[ci].target) continue;
            bool fals = true;
            for (Lit l : db[ci].c.lits)
                if (value(l) != 0) { fals = false; break; }
            if (fals) return (int)ci;
        }
        return -1;
    }

    // Trivial-redundancy fixpoint over target clauses under the current
    // assignment: (a) satisfied, (b) residual subsumed by a non-target
    // clause, (c) an unassigned W-literal with no active resolution
    // partner. Returns per-target drop status plus D-sequents; also marks
    // must-prove-local obligations from unit targets.
    struct RuleState {
        std::vector<uint8_t> dropped;       // by db index
        std::vector<DSequent> dseqs;        // for dropped targets
        std::vector<uint8_t> obligated;     // by db index
        bool all_dropped = true;
    };

    // residual of clause under assignment: satisfied -> nullopt-sentinel
    bool residual(const Clause& c, std::vector<Lit>& out) const {
        out.clear();
        for (Lit l : c.lits) {
            uint8_t v = value(l);
            if (v == 1) return false;  // satisfied
            if (v == 2) out.push_back(l);
        }
        return true;
    }

    DSequent coarse_dseq(int target) const {
        DSequent d;
        d.target = target;
        d.condition = decisions;
        std::sort(d.condition.begin(), d.condition.end(),
                  [](Lit a, Lit b) { return lit_var(a) < lit_var(b); });
        return d;
    }

    RuleState apply_rules() {
        RuleState st;
        st.dropped.assign(db.size(), 0);
        st.obligated.assign(db.size(), 0);

        std::vector<Lit> res, res2;
        bool progress = true;
        while (progress) {
            progress = false;
            for (size_t ci = 0; ci < db.size(); ++ci) {
                const PClause& pc = db[ci];
                if (!pc.target || st.dropped[ci]) continue;
                // (a) satisfied in the current branch
                if (!residual(pc.c, res)) {
                    st.dropped[ci] = 1;
                    DSequent d;
                    d.target = (int)ci;
                    // condition: the satisfying assignment actually present
                    for (Lit l : pc.c.lits)
                        if (value(l) == 1) { d.condition = {l}; break; }
                    st.dseqs.push_back(d);
                    ++stats.dsequents;
                    progress = true;
                    continue;
                }
                // (b) implied by a non-target clause (residual subsumption)
                bool dropped_b = false;
                for (size_t di = 0; di < db.size() && !dropped_b; ++di) {
                    if (di == ci || db[di].target) continue;
                    if (!residual(db[di].c, res2)) continue;
                    if (res2.empty()) continue;
                    bool sub = std::includes(res.begin(), res.end(), res2.begin(), res2.end(),
                                             [](Lit a, Lit b) {
                                                 return lit_var(a) != lit_var(b)
                                                            ? lit_var(a) < lit_var(b)
                                                            : a > b;
                                             });
                    if (sub) {
                        st.dropped[ci] = 1;
                        st.dseqs.push_back(coarse_dseq((int)ci));
                        ++stats.dsequents;
                        progress = true;
                        dropped_b = true;
                    }
                }
                if (dropped_b) continue;
                // (c) an unassigned W-literal on which the clause cannot be
                // resolved: every other clause with the complement is
                // satisfied or already dropped
                for (Lit l : res) {
                    if (!is_w[lit_var(l)]) continue;
                    bool partner = false;
                    for (size_t di = 0; di < db.size() && !partner; ++di) {
                        if (di == ci || st.dropped[di]) continue;
                        const Clause& d = db[di].c;
                        if (!d.contains(-l)) continue;
                        std::vector<Lit> r;
                        if (residual(d, r)) partner = true;
                    }
                    if (!partner) {
                        st.dropped[ci] = 1;
                        st.dseqs.push_back(coarse_dseq((int)ci));
                        ++stats.dsequents;
                        progress = true;
                        break;
                    }
                }
            }
        }
        for (size_t ci = 0; ci < db.size(); ++ci) {
            if (db[ci].target && !st.dropped[ci]) {
                st.all_dropped = false;
                // obligation marking: a unit target forcing l obligates the
                // clauses resolvable on -l in the l branch
                if (residual(db[ci].c, res) && res.size() == 1 && is_w[lit_var(res[0])]) {
                    for (size_t di = 0; di < db.size(); ++di) {
                        if (di == ci || st.dropped[di]) continue;
                        std::vector<Lit> r;
                        if (db[di].c.contains(-res[0]) && residual(db[di].c, r)) {
                            if (!st.obligated[di]) ++stats.obligations;
                            st.obligated[di] = 1;
                        }
                    }
                }
            }
        }
        return st;
    }

    // Branch variable: free (V) variables occurring in undropped targets
    // and obligated clauses first, by occurrence count, then any free
    // variable by index. Phase satisfies the most undropped targets.
    Lit pick_branch(const RuleState& st) {
        std::vector<int> score(nvars + 1, 0);
        std::vector<int> pol(nvars + 1, 0);
        for (size_t ci = 0; ci < db.size(); ++ci) {
            if (st.dropped[ci]) continue;
            bool interesting = (db[ci].target) || st.obligated[ci];
            if (!interesting) continue;
            for (Lit l : db[ci].c.lits) {
                int v = lit_var(l);
                if (is_w[v] || assign[v] != 2) continue;
                score[v] += db[ci].target ? 2 : 1;
                pol[v] += l > 0 ? 1 : -1;
            }
        }
        int best = 0;
        for (int v = 1; v <= nvars; ++v) {
            if (is_w[v] || assign[v] != 2) continue;
            if (best == 0 || score[v] > score[best]) best = v;
        }
        if (best == 0) return 0;
        return pol[best] >= 0 ? best : -best;
    }

    void step() {
        if (++steps > opts.max_steps)
            throw Error(ErrorKind::Budget, "pqe_solve: step budget exceeded");
    }

    Result node() {
        step();
        int confl = bcp();
        if (confl >= 0) {
            Clause cert = analyze(confl);
            add_db(cert, Tag::Lemma);
            return {false, cert};
        }
        int ft = find_falsified_target();
        if (ft >= 0) {
            Clause cert = analyze(ft);
            add_db(cert, Tag::A);  // all-decision, V-only: joins A*
            ++stats.resolvents;
            return {false, cert};
        }
        RuleState st = apply_rules();
        if (st.all_dropped) return {true, {}};

        Lit dec = pick_branch(st);
        if (dec == 0) return leaf();

        ++stats.branches;
        size_t mark = trail.size();
        push(dec, -1);
        Result r0 = node();
        pop_to(mark);
        if (!r0.proved && !r0.cert.contains_var(lit_var(dec))) return r0;

        push(-dec, -1);
        Result r1 = node();
        pop_to(mark);
        if (!r1.proved && !r1.cert.contains_var(lit_var(dec))) return r1;

        if (r0.proved && r1.proved) {
            join_at(lit_var(dec));
            return {true, {}};
        }
        if (r0.proved || r1.proved) return {true, {}};
        // both conflicted on this variable: resolve. The certificates are
        // falsified outside var(dec) by the shared prefix, so the resolvent
        // cannot be tautological.
        auto res = resolve(r0.cert, r1.cert, lit_var(dec));
        assert(res.has_value());
        ++stats.resolvents;
        add_db(*res, Tag::Lemma);
        return {false, *res};
    }

    // All free variables assigned: decide the point with the sub-solvers.
    Result leaf() {
        ++stats.sat_calls;
        auto rf = full_sat.solve(decisions);
        if (rf.sat()) return {true, {}};
        ++stats.sat_calls;
        auto rn = nt_sat.solve(decisions);
        std::vector<Lit> cert_lits;
        if (rn.sat()) {
            // the refutation needs target clauses: new A* content
            for (Lit l : rf.failed) cert_lits.push_back(-l);
            auto norm = normalize_clause(cert_lits);
            assert(norm.has_value());
            add_db(*norm, Tag::A);
            ++stats.resolvents;
            return {false, *norm};
        }
        for (Lit l : rn.failed) cert_lits.push_back(-l);
        auto norm = normalize_clause(cert_lits);
        assert(norm.has_value());
        add_db(*norm, Tag::Lemma);
        return {false, *norm};
    }

    // Weakens both branches' D-sequents to the shared parent condition and
    // joins them at y. Bookkeeping only: redundancy was established per
    // subspace by the branch results.
    void join_at(int y) {
        DSequent d0, d1;
        d0.target = d1.target = -2;
        d0.condition = decisions;
        d0.condition.push_back(-y);
        d1.condition = decisions;
        d1.condition.push_back(y);
        auto by_var = [](Lit a, Lit b) { return lit_var(a) < lit_var(b); };
        std::sort(d0.condition.begin(), d0.condition.end(), by_var);
        std::sort(d1.condition.begin(), d1.condition.end(), by_var);
        join_dsequents(d0, d1, y);
        ++stats.joins;
    }

    PqeSolution run() {
        PqeSolution sol;
        node();  // Proved or Conflict: both leave A* complete (see below)
        // A* = V-only clauses with A ancestry, subsumption-filtered.
        std::vector<Clause> kept;
        for (const PClause& pc : db) {
            if (pc.tag != Tag::A || pc.target) continue;
            bool sub = false;
            for (const Clause& k : kept)
                if (subsumes(k, pc.c)) { sub = true; break; }
            if (sub) continue;
            std::erase_if(kept, [&](const Clause& k) { return subsumes(pc.c, k); });
            kept.push_back(pc.c);
        }
        for (int v : prob.free_vars()) sol.astar.ensure_var(v);
        for (const Clause& c : kept) sol.astar.add_clause(c);
        sol.astar.canonicalize();
        sol.stats = stats;
        return sol;
    }
};

}  // namespace

PqeSolution pqe_solve(const PqeProblem& p, const PqeOptions& opts) {
    PqeEngine engine(p, opts);
    return engine.run();
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

bool verify_pqe_solution(const PqeProblem& p, const PqeSolution& s) {
    // Direction 1: A ^ B -> Astar, clause by clause.
    CnfFormula ab;
    ab.ensure_var(p.num_vars());
    ab.append(p.a);
    ab.append(p.b);
    for (const Clause& c : s.astar.clauses())
        if (!sat::implies(ab, c)) return false;

    // Direction 2: no V-point with Astar = 1 and exists W[B] = 1 but
    // exists W[A ^ B] = 0. SAT-guided enumeration of candidates.
    std::vector<int> v_vars = p.free_vars();
    sat::Solver cand;
    cand.ensure_vars(p.num_vars());
    for (const Clause& c : s.astar.clauses()) cand.add_clause(c.lits);
    for (const Clause& c : p.b.clauses()) cand.add_clause(c.lits);

    sat::Solver ab_sat;
    ab_sat.ensure_vars(p.num_vars());
    for (const Clause& c : p.a.clauses()) ab_sat.add_clause(c.lits);
    for (const Clause& c : p.b.clauses()) ab_sat.add_clause(c.lits);

    uint64_t guard = 0;
    for (;;) {
        auto r = cand.solve();
        if (r.unsat()) break;
        std::vector<Lit> point, block;
        for (int v : v_vars) {
            point.push_back(r.model[v] ? v : -v);
            block.push_back(r.model[v] ? -v : v);
        }
        if (ab_sat.solve(point).unsat()) return false;
        cand.add_clause(block);
        if (++guard > (1ull << 22))
            throw Error(ErrorKind::Bound, "verify_pqe_solution: candidate bound exceeded");
    }
    return true;
}

// ---------------------------------------------------------------------------
// Text format
// ---------------------------------------------------------------------------

std::string emit_pqe(const PqeProblem& p) {
    std::ostringstream os;
    os << "c pqe A " << p.a.size() << "\n";
    os << "e";
    for (int v : p.w) os << " " << v;
    os << " 0\n";
    os << "p cnf " << p.num_vars() << " " << (p.a.size() + p.b.size()) << "\n";
    for (const Clause& c : p.a.clauses()) {
        for (Lit l : c.lits) os << l << " ";
        os << "0\n";
    }
    for (const Clause& c : p.b.clauses()) {
        for (Lit l : c.lits) os << l << " ";
        os << "0\n";
    }
    return os.str();
}

PqeProblem parse_pqe(const std::string& text) {
    PqeProblem p;
    std::istringstream is(text);
    std::string line;
    long a_count = -1;
    int declared_vars = 0;
    bool saw_p = false;
    std::vector<std::vector<Lit>> clauses;
    std::vector<Lit> cur;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok == "c") {
            std::string kw;
            if (ls >> kw && kw == "pqe") {
                std::string which;
                if (ls >> which && which == "A") ls >> a_count;
            }
            continue;
        }
        if (tok == "e") {
            int v;
            while (ls >> v && v != 0) p.w.push_back(v);
            continue;
        }
        if (tok == "p") {
            std::string fmt;
            int nc;
            if (!(ls >> fmt >> declared_vars >> nc) || fmt != "cnf")
                throw Error(ErrorKind::Syntax, "parse_pqe: bad problem line");
            saw_p = true;
            continue;
        }
        // clause data
        std::istringstream cs(line);
        Lit l;
        while (cs >> l) {
            if (l == 0) {
                clauses.push_back(cur);
                cur.clear();
            } else
                cur.push_back(l);
        }
    }
    if (!cur.empty()) clauses.push_back(cur);
    if (!saw_p) throw Error(ErrorKind::Syntax, "parse_pqe: missing p line");
    if (a_count < 0 || a_count > (long)clauses.size())
        throw Error(ErrorKind::Syntax, "parse_pqe: missing or bad 'c pqe A' marker");
    p.a.ensure_var(declared_vars);
    p.b.ensure_var(declared_vars);
    for (long i = 0; i < (long)clauses.size(); ++i) {
        if (i < a_count)
            p.a.add_clause(clauses[i]);
        else
            p.b.add_clause(clauses[i]);
    }
    return p;
}

}  // namespace relaxec
