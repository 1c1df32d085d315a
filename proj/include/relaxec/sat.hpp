#pragma once

#include <cstdint>
#include <vector>

#include "relaxec/cnf.hpp"

namespace relaxec::sat {

struct Stats {
    uint64_t decisions = 0;
    uint64_t conflicts = 0;
    uint64_t propagations = 0;
    uint64_t restarts = 0;
};

enum class Status { Sat, Unsat, Budget };

struct Result {
    Status status = Status::Unsat;
    // model[v] for v in 1..num_vars, total when Sat
    std::vector<uint8_t> model;
    // subset of the assumptions forming a failed core when Unsat under assumptions
    std::vector<Lit> failed;
    Stats stats;

    bool sat() const { return status == Status::Sat; }
    bool unsat() const { return status == Status::Unsat; }
};

/// Incremental CDCL solver: first-UIP learning, two-literal watching,
/// VSIDS decisions, phase saving, Luby restarts. Deterministic for a
/// fixed seed. One instance is single-threaded; independent instances
/// may run concurrently.
class Solver {
  public:
    explicit Solver(uint64_t seed = 0);
    ~Solver();
    Solver(const Solver&) = delete;
    Solver& operator=(const Solver&) = delete;

    void ensure_vars(int n);
    int num_vars() const;
    // false if the clause is a tautology (dropped) or already falsified at root.
    bool add_clause(const std::vector<Lit>& lits);
    void add_formula(const CnfFormula& f);

    // 0 = unlimited. Budget is per solve() call.
    void set_conflict_budget(uint64_t conflicts);

    Result solve(const std::vector<Lit>& assumptions = {});

  private:
    struct Impl;
    Impl* impl_;
};

Result solve(const CnfFormula& f, const std::vector<Lit>& assumptions = {}, uint64_t seed = 0);

/// true iff f implies c, i.e. f AND NOT c is unsatisfiable.
bool implies(const CnfFormula& f, const Clause& c);

}  // namespace relaxec::sat
