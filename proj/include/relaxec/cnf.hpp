#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace relaxec {

// Signed DIMACS-style literal: +v / -v, v >= 1.
using Lit = int;

inline int lit_var(Lit l) { return l < 0 ? -l : l; }
inline bool lit_sign(Lit l) { return l < 0; }

// A clause is kept sorted by (variable, sign) with duplicates removed.
// Tautologies are never stored; normalize() reports them as nullopt.
struct Clause {
    std::vector<Lit> lits;

    Clause() = default;
    explicit Clause(std::vector<Lit> ls) : lits(std::move(ls)) {}

    size_t size() const { return lits.size(); }
    bool empty() const { return lits.empty(); }
    bool contains(Lit l) const;
    bool contains_var(int v) const;

    bool operator==(const Clause& o) const { return lits == o.lits; }
    bool operator<(const Clause& o) const { return lits < o.lits; }
};

// Sorts, dedupes; nullopt if the clause is a tautology (x and -x).
std::optional<Clause> normalize_clause(std::vector<Lit> lits);

// true iff every literal of `sub` occurs in `sup` (both normalized).
bool subsumes(const Clause& sub, const Clause& sup);

// Resolvent of a and b on variable v (a contains v or -v, b the opposite).
// nullopt if the resolvent is tautological.
std::optional<Clause> resolve(const Clause& a, const Clause& b, int v);

/// Clause database over integer variables plus an optional net<->variable
/// name map. Tautologies are silently dropped at insertion.
class CnfFormula {
  public:
    CnfFormula() = default;
    explicit CnfFormula(int num_vars) : num_vars_(num_vars) {}

    int num_vars() const { return num_vars_; }
    void ensure_var(int v);
    int new_var();
    int new_var(const std::string& name);

    // Returns false if the clause was a tautology (and thus dropped).
    bool add_clause(std::vector<Lit> lits);
    bool add_clause(const Clause& c) { return add_clause(c.lits); }

    const std::vector<Clause>& clauses() const { return clauses_; }
    size_t size() const { return clauses_.size(); }

    void set_name(int var, const std::string& name);
    // 0 if the name is unknown.
    int var_of(const std::string& name) const;
    // "" if the variable has no name.
    const std::string& name_of(int var) const;
    const std::unordered_map<std::string, int>& name_map() const { return var_of_; }

    // All variables actually appearing in some clause, ascending.
    std::vector<int> vars_used() const;

    // Evaluates the conjunction under a total assignment (assign[v] for v>=1).
    bool eval(const std::vector<uint8_t>& assign) const;

    // Clause-by-clause conjunction; name maps merged (other wins on clash).
    void append(const CnfFormula& other);

    // Sorts clause list and removes duplicates (for reproducible output).
    void canonicalize();

  private:
    int num_vars_ = 0;
    std::vector<Clause> clauses_;
    std::unordered_map<std::string, int> var_of_;
    std::vector<std::string> names_;  // 1-based, "" when unnamed
};

bool eval_clause(const Clause& c, const std::vector<uint8_t>& assign);

// Standard DIMACS CNF text. Named variables are recorded up front as
// "c var <n> <name>" comment lines.
std::string emit_dimacs(const CnfFormula& f);

}  // namespace relaxec
