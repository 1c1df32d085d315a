#include "relaxec/sat.hpp"

#include <algorithm>
#include <cassert>
#include <random>

namespace relaxec::sat {

namespace {

// Literal index: variable v (1-based) -> 2(v-1) for +v, 2(v-1)+1 for -v.
inline int idx(Lit l) { return 2 * (lit_var(l) - 1) + (l < 0); }
inline Lit neg(Lit l) { return -l; }

constexpr uint8_t kUndef = 2;

// Luby restart sequence.
double luby(double y, int x) {
    int size, seq;
    for (size = 1, seq = 0; size < x + 1; seq++, size = 2 * size + 1) {}
    while (size - 1 != x) {
        size = (size - 1) >> 1;
        seq--;
        x = x % size;
    }
    double r = 1;
    for (int i = 0; i < seq; ++i) r *= y;
    return r;
}

}  // namespace

struct Solver::Impl {
    std::vector<std::vector<Lit>> clauses;

    struct Watcher {
        int cref;
        Lit blocker;
    };
    std::vector<std::vector<Watcher>> watches;  // by literal index

    int nvars = 0;
    std::vector<uint8_t> assign;   // 1-based: 0/1/kUndef
    std::vector<int> level;        // 1-based
    std::vector<int> reason;       // 1-based, clause ref or -1
    std::vector<Lit> trail;
    std::vector<int> trail_lim;
    size_t qhead = 0;

    std::vector<double> activity;  // 1-based
    double var_inc = 1.0;
    static constexpr double kVarDecay = 0.95;
    std::vector<int> heap;
    std::vector<int> heap_pos;     // 1-based; -1 if absent
    std::vector<uint8_t> phase;    // 1-based saved polarity

    std::vector<uint8_t> seen;     // 1-based scratch
    std::mt19937_64 rng;
    bool root_unsat = false;

    Stats stats;
    uint64_t conflict_budget = 0;

    explicit Impl(uint64_t seed) : rng(seed) {
        // 1-based sentinels
        assign.push_back(kUndef);
        level.push_back(0);
        reason.push_back(-1);
        activity.push_back(0.0);
        phase.push_back(0);
        seen.push_back(0);
        heap_pos.push_back(-1);
    }

    int decision_level() const { return (int)trail_lim.size(); }

    uint8_t value(Lit l) const {
        uint8_t v = assign[lit_var(l)];
        if (v == kUndef) return kUndef;
        return (l > 0) == (v == 1) ? 1 : 0;
    }

    void ensure_vars(int n) {
        while (nvars < n) {
            ++nvars;
            assign.push_back(kUndef);
            level.push_back(0);
            reason.push_back(-1);
            activity.push_back(0.0);
            phase.push_back(0);
            seen.push_back(0);
            heap_pos.push_back(-1);
            watches.emplace_back();
            watches.emplace_back();
            heap_insert(nvars);
        }
    }

    // ---- activity heap (max-heap, var index tie-break) ----
    bool heap_less(int a, int b) const {
        return activity[a] != activity[b] ? activity[a] > activity[b] : a < b;
    }
    void heap_swap(int i, int j) {
        std::swap(heap[i], heap[j]);
        heap_pos[heap[i]] = i;
        heap_pos[heap[j]] = j;
    }
    void heap_up(int i) {
        while (i > 0) {
            int p = (i - 1) / 2;
            if (heap_less(heap[i], heap[p])) {
                heap_swap(i, p);
                i = p;
            } else
                break;
        }
    }
    void heap_down(int i) {
        for (;;) {
            int l = 2 * i + 1, r = 2 * i + 2, best = i;
            if (l < (int)heap.size() && heap_less(heap[l], heap[best])) best = l;
            if (r < (int)heap.size() && heap_less(heap[r], heap[best])) best = r;
            if (best == i) break;
            heap_swap(i, best);
            i = best;
        }
    }
    void heap_insert(int v) {
        if (heap_pos[v] >= 0) return;
        heap.push_back(v);
        heap_pos[v] = (int)heap.size() - 1;
        heap_up((int)heap.size() - 1);
    }
    int heap_pop() {
        int v = heap[0];
        heap_swap(0, (int)heap.size() - 1);
        heap.pop_back();
        heap_pos[v] = -1;
        if (!heap.empty()) heap_down(0);
        return v;
    }
    void bump(int v) {
        activity[v] += var_inc;
        if (activity[v] > 1e100) {
            for (int u = 1; u <= nvars; ++u) activity[u] *= 1e-100;
            var_inc *= 1e-100;
        }
        if (heap_pos[v] >= 0) heap_up(heap_pos[v]);
    }

    // ---- trail ----
    void unchecked_enqueue(Lit l, int from) {
        int v = lit_var(l);
        assign[v] = (l > 0);
        level[v] = decision_level();
        reason[v] = from;
        trail.push_back(l);
    }

    void cancel_until(int lvl) {
        if (decision_level() <= lvl) return;
        for (int i = (int)trail.size() - 1; i >= trail_lim[lvl]; --i) {
            int v = lit_var(trail[i]);
            phase[v] = assign[v] == 1;
            assign[v] = kUndef;
            heap_insert(v);
        }
        trail.resize(trail_lim[lvl]);
        trail_lim.resize(lvl);
        qhead = trail.size();
    }

    // ---- clauses ----
    void attach(int cref) {
        const auto& c = clauses[cref];
        watches[idx(neg(c[0]))].push_back({cref, c[1]});
        watches[idx(neg(c[1]))].push_back({cref, c[0]});
    }

    bool add_clause(const std::vector<Lit>& in) {
        assert(decision_level() == 0);
        auto norm = normalize_clause(in);
        if (!norm) return false;
        std::vector<Lit> c;
        for (Lit l : norm->lits) {
            ensure_vars(lit_var(l));
            uint8_t v = value(l);
            if (v == 1) return true;
            if (v == kUndef) c.push_back(l);
        }
        if (c.empty()) {
            root_unsat = true;
            return false;
        }
        if (c.size() == 1) {
            unchecked_enqueue(c[0], -1);
            if (propagate() >= 0) root_unsat = true;
            return true;
        }
        clauses.push_back(std::move(c));
        attach((int)clauses.size() - 1);
        return true;
    }

    // Returns conflicting clause ref or -1.
    int propagate() {
        while (qhead < trail.size()) {
            Lit p = trail[qhead++];
            ++stats.propagations;
            auto& ws = watches[idx(p)];
            size_t i = 0, j = 0;
            while (i < ws.size()) {
                Watcher w = ws[i];
                if (value(w.blocker) == 1) {
                    ws[j++] = ws[i++];
                    continue;
                }
                auto& c = clauses[w.cref];
                Lit false_lit = neg(p);
                if (c[0] == false_lit) std::swap(c[0], c[1]);
                ++i;
                if (value(c[0]) == 1) {
                    ws[j++] = {w.cref, c[0]};
                    continue;
                }
                bool moved = false;
                for (size_t k = 2; k < c.size(); ++k) {
                    if (value(c[k]) != 0) {
                        std::swap(c[1], c[k]);
                        watches[idx(neg(c[1]))].push_back({w.cref, c[0]});
                        moved = true;
                        break;
                    }
                }
                if (moved) continue;
                ws[j++] = {w.cref, c[0]};
                if (value(c[0]) == 0) {
                    while (i < ws.size()) ws[j++] = ws[i++];
                    ws.resize(j);
                    qhead = trail.size();
                    return w.cref;
                }
                unchecked_enqueue(c[0], w.cref);
            }
            ws.resize(j);
        }
        return -1;
    }

    // First-UIP learning with reason-subsumption minimization.
    void analyze(int confl, std::vector<Lit>& out_learnt, int& out_btlevel) {
        out_learnt.clear();
        out_learnt.push_back(0);
        int path = 0;
        Lit p = 0;
        size_t index = trail.size();

        do {
            const auto& c = clauses[confl];
            for (size_t k = (p == 0 ? 0 : 1); k < c.size(); ++k) {
                Lit q = c[k];
                int v = lit_var(q);
                if (!seen[v] && level[v] > 0) {
                    seen[v] = 1;
                    bump(v);
                    if (level[v] >= decision_level())
                        ++path;
                    else
                        out_learnt.push_back(q);
                }
            }
            while (!seen[lit_var(trail[index - 1])]) --index;
            p = trail[index - 1];
            --index;
            confl = reason[lit_var(p)];
            seen[lit_var(p)] = 0;
            --path;
        } while (path > 0);
        out_learnt[0] = neg(p);

        std::vector<Lit> pre = out_learnt;  // for seen[] cleanup
        size_t jj = 1;
        for (size_t ii = 1; ii < out_learnt.size(); ++ii) {
            Lit q = out_learnt[ii];
            int r = reason[lit_var(q)];
            bool redundant = r >= 0;
            if (redundant) {
                for (Lit cl : clauses[r]) {
                    if (lit_var(cl) == lit_var(q)) continue;
                    if (!seen[lit_var(cl)] && level[lit_var(cl)] > 0) {
                        redundant = false;
                        break;
                    }
                }
            }
            if (!redundant) out_learnt[jj++] = q;
        }
        out_learnt.resize(jj);

        if (out_learnt.size() == 1) {
            out_btlevel = 0;
        } else {
            size_t max_i = 1;
            for (size_t ii = 2; ii < out_learnt.size(); ++ii)
                if (level[lit_var(out_learnt[ii])] > level[lit_var(out_learnt[max_i])])
                    max_i = ii;
            std::swap(out_learnt[1], out_learnt[max_i]);
            out_btlevel = level[lit_var(out_learnt[1])];
        }
        for (Lit q : pre) seen[lit_var(q)] = 0;
    }

    // Failed-assumption core: `a` is an assumption whose negation holds.
    void analyze_final(Lit a, std::vector<Lit>& out) {
        out.clear();
        out.push_back(a);
        if (decision_level() == 0 || level[lit_var(a)] == 0) return;
        seen[lit_var(a)] = 1;
        for (int i = (int)trail.size() - 1; i >= trail_lim[0]; --i) {
            int v = lit_var(trail[i]);
            if (!seen[v]) continue;
            seen[v] = 0;
            int r = reason[v];
            if (r < 0) {
                if (v != lit_var(a)) out.push_back(trail[i]);
            } else {
                for (Lit l : clauses[r])
                    if (lit_var(l) != v && level[lit_var(l)] > 0) seen[lit_var(l)] = 1;
            }
        }
        seen[lit_var(a)] = 0;
    }

    Lit pick_branch() {
        while (!heap.empty()) {
            int v = heap[0];
            heap_pop();
            if (assign[v] == kUndef) return phase[v] ? v : -v;
        }
        return 0;
    }

    Result solve(const std::vector<Lit>& assumptions) {
        Result res;
        Stats at_entry = stats;
        auto finish = [&](Status st) {
            res.status = st;
            res.stats.decisions = stats.decisions - at_entry.decisions;
            res.stats.conflicts = stats.conflicts - at_entry.conflicts;
            res.stats.propagations = stats.propagations - at_entry.propagations;
            res.stats.restarts = stats.restarts - at_entry.restarts;
        };
        for (Lit a : assumptions) ensure_vars(lit_var(a));
        if (root_unsat) {
            finish(Status::Unsat);
            return res;
        }

        std::vector<Lit> learnt;
        int restart_count = 0;
        uint64_t restart_limit = (uint64_t)(64 * luby(2.0, restart_count));
        uint64_t conflicts_since_restart = 0;
        uint64_t conflicts_at_start = stats.conflicts;

        for (;;) {
            int confl = propagate();
            if (confl >= 0) {
                ++stats.conflicts;
                ++conflicts_since_restart;
                if (decision_level() == 0) {
                    root_unsat = true;
                    finish(Status::Unsat);
                    return res;
                }
                if (decision_level() <= (int)assumptions.size()) {
                    // All decisions are assumptions: extract a core from the
                    // conflicting clause.
                    conflict_core(confl, res.failed, assumptions);
                    cancel_until(0);
                    finish(Status::Unsat);
                    return res;
                }
                int btlevel;
                analyze(confl, learnt, btlevel);
                cancel_until(btlevel);
                if (learnt.size() == 1 && btlevel == 0) {
                    unchecked_enqueue(learnt[0], -1);
                } else {
                    clauses.push_back(learnt);
                    attach((int)clauses.size() - 1);
                    unchecked_enqueue(learnt[0], (int)clauses.size() - 1);
                }
                var_inc /= kVarDecay;
                if (conflict_budget && stats.conflicts - conflicts_at_start >= conflict_budget) {
                    cancel_until(0);
                    finish(Status::Budget);
                    return res;
                }
                continue;
            }
            if (conflicts_since_restart >= restart_limit &&
                decision_level() > (int)assumptions.size()) {
                ++stats.restarts;
                ++restart_count;
                restart_limit = (uint64_t)(64 * luby(2.0, restart_count));
                conflicts_since_restart = 0;
                cancel_until((int)std::min(assumptions.size(), trail_lim.size()));
                continue;
            }
            if (decision_level() < (int)assumptions.size()) {
                Lit a = assumptions[decision_level()];
                uint8_t v = value(a);
                if (v == 1) {
                    trail_lim.push_back((int)trail.size());  // dummy level
                } else if (v == 0) {
                    analyze_final(a, res.failed);
                    cancel_until(0);
                    finish(Status::Unsat);
                    return res;
                } else {
                    trail_lim.push_back((int)trail.size());
                    unchecked_enqueue(a, -1);
                }
                continue;
            }
            Lit next = pick_branch();
            if (next == 0) {
                res.model.assign(nvars + 1, 0);
                for (int v = 1; v <= nvars; ++v) res.model[v] = assign[v] == 1;
                cancel_until(0);
                finish(Status::Sat);
                return res;
            }
            ++stats.decisions;
            trail_lim.push_back((int)trail.size());
            unchecked_enqueue(next, -1);
        }
    }

    // Conflict while only assumption decisions are on the trail: every
    // decision reachable from the conflict is an assumption.
    void conflict_core(int confl, std::vector<Lit>& out, const std::vector<Lit>& assumptions) {
        out.clear();
        for (Lit l : clauses[confl])
            if (level[lit_var(l)] > 0) seen[lit_var(l)] = 1;
        for (int i = (int)trail.size() - 1; i >= trail_lim[0]; --i) {
            int v = lit_var(trail[i]);
            if (!seen[v]) continue;
            seen[v] = 0;
            int r = reason[v];
            if (r < 0)
                out.push_back(trail[i]);
            else
                for (Lit l : clauses[r])
                    if (lit_var(l) != v && level[lit_var(l)] > 0) seen[lit_var(l)] = 1;
        }
        (void)assumptions;
    }

};

Solver::Solver(uint64_t seed) : impl_(new Impl(seed)) {}
Solver::~Solver() { delete impl_; }

void Solver::ensure_vars(int n) { impl_->ensure_vars(n); }
int Solver::num_vars() const { return impl_->nvars; }
bool Solver::add_clause(const std::vector<Lit>& lits) { return impl_->add_clause(lits); }
void Solver::add_formula(const CnfFormula& f) {
    impl_->ensure_vars(f.num_vars());
    for (const Clause& c : f.clauses()) impl_->add_clause(c.lits);
}
void Solver::set_conflict_budget(uint64_t conflicts) { impl_->conflict_budget = conflicts; }
Result Solver::solve(const std::vector<Lit>& assumptions) { return impl_->solve(assumptions); }

Result solve(const CnfFormula& f, const std::vector<Lit>& assumptions, uint64_t seed) {
    Solver s(seed);
    s.add_formula(f);
    return s.solve(assumptions);
}

bool implies(const CnfFormula& f, const Clause& c) {
    Solver s;
    s.add_formula(f);
    std::vector<Lit> assume;
    for (Lit l : c.lits) {
        s.ensure_vars(lit_var(l));
        assume.push_back(-l);
    }
    return s.solve(assume).status == Status::Unsat;
}

}  // namespace relaxec::sat
