#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "relaxec/cnf.hpp"

namespace relaxec {

/// The instance "exists W . A ^ B" with A the target to take out of the
/// scope of quantifiers. Free variables V = vars(A ^ B) minus W.
struct PqeProblem {
    CnfFormula a;
    CnfFormula b;
    std::vector<int> w;

    std::vector<int> free_vars() const;
    std::vector<int> quantified_vars() const;  // w restricted to used vars
    int num_vars() const;
};

struct PqeStats {
    uint64_t branches = 0;
    uint64_t dsequents = 0;
    uint64_t joins = 0;
    uint64_t resolvents = 0;
    uint64_t obligations = 0;
    uint64_t sat_calls = 0;
};

/// A*(V) with exists W[A ^ B]  ==  A* ^ exists W[B].
struct PqeSolution {
    CnfFormula astar;
    PqeStats stats;
};

/// Record that a target clause is redundant in the quantified formula
/// within the subspace fixed by `condition` (literals read as var=value).
/// An unconditional D-sequent has an empty condition.
struct DSequent {
    std::vector<Lit> condition;  // sorted by variable
    int target = -1;             // clause id in the owning derivation
};

/// Join at variable y: d0 assigns y=0, d1 assigns y=1, same target,
/// conditions agree elsewhere. The result no longer mentions y.
DSequent join_dsequents(const DSequent& d0, const DSequent& d1, int y);

struct PqeOptions {
    uint64_t max_steps = 2000000;
};

/// Brute-force reference: enumerates the V space (|V| <= 20, |V u W| <= 24).
/// Don't-care points (where exists W[B] = 0) resolve to 1; the result is
/// minterm-blocking clauses for the 0-points, greedily widened.
PqeSolution pqe_oracle(const PqeProblem& p);

/// Branching solver in the D-sequent style: trivial-redundancy rules,
/// conflict resolvents, join at branch variables. Only clauses with an
/// A-side ancestor ever enter A*. Throws Budget past max_steps.
PqeSolution pqe_solve(const PqeProblem& p, const PqeOptions& opts = {});

/// Checks exists W[A ^ B] == Astar ^ exists W[B]: clause-wise implication
/// by SAT plus SAT-guided enumeration of disagreement candidates.
bool verify_pqe_solution(const PqeProblem& p, const PqeSolution& s);

// Quantified-problem text: "c pqe A <n>" marking the A-block, "e ... 0"
// listing W, then a standard DIMACS body whose first n clauses are A.
std::string emit_pqe(const PqeProblem& p);
PqeProblem parse_pqe(const std::string& text);

}  // namespace relaxec
