#include "relaxec/cnf.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace relaxec {

bool Clause::contains(Lit l) const {
    return std::binary_search(lits.begin(), lits.end(), l, [](Lit a, Lit b) {
        return lit_var(a) != lit_var(b) ? lit_var(a) < lit_var(b) : a > b;
    });
}

bool Clause::contains_var(int v) const {
    for (Lit l : lits)
        if (lit_var(l) == v) return true;
    return false;
}

static bool lit_less(Lit a, Lit b) {
    // Sort by variable, positive literal before negative.
    return lit_var(a) != lit_var(b) ? lit_var(a) < lit_var(b) : a > b;
}

std::optional<Clause> normalize_clause(std::vector<Lit> lits) {
    std::sort(lits.begin(), lits.end(), lit_less);
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    for (size_t i = 0; i + 1 < lits.size(); ++i)
        if (lit_var(lits[i]) == lit_var(lits[i + 1])) return std::nullopt;  // tautology
    return Clause(std::move(lits));
}

bool subsumes(const Clause& sub, const Clause& sup) {
    if (sub.size() > sup.size()) return false;
    size_t j = 0;
    for (Lit l : sub.lits) {
        while (j < sup.size() && lit_less(sup.lits[j], l)) ++j;
        if (j >= sup.size() || sup.lits[j] != l) return false;
        ++j;
    }
    return true;
}

std::optional<Clause> resolve(const Clause& a, const Clause& b, int v) {
    std::vector<Lit> out;
    out.reserve(a.size() + b.size());
    for (Lit l : a.lits)
        if (lit_var(l) != v) out.push_back(l);
    for (Lit l : b.lits)
        if (lit_var(l) != v) out.push_back(l);
    return normalize_clause(std::move(out));
}

void CnfFormula::ensure_var(int v) {
    if (v > num_vars_) num_vars_ = v;
}

int CnfFormula::new_var() { return ++num_vars_; }

int CnfFormula::new_var(const std::string& name) {
    int v = new_var();
    set_name(v, name);
    return v;
}

bool CnfFormula::add_clause(std::vector<Lit> lits) {
    auto c = normalize_clause(std::move(lits));
    if (!c) return false;
    for (Lit l : c->lits) ensure_var(lit_var(l));
    clauses_.push_back(std::move(*c));
    return true;
}

void CnfFormula::set_name(int var, const std::string& name) {
    ensure_var(var);
    if ((int)names_.size() < var + 1) names_.resize(var + 1);
    names_[var] = name;
    var_of_[name] = var;
}

int CnfFormula::var_of(const std::string& name) const {
    auto it = var_of_.find(name);
    return it == var_of_.end() ? 0 : it->second;
}

const std::string& CnfFormula::name_of(int var) const {
    static const std::string empty;
    if (var <= 0 || var >= (int)names_.size()) return empty;
    return names_[var];
}

std::vector<int> CnfFormula::vars_used() const {
    std::vector<uint8_t> seen(num_vars_ + 1, 0);
    for (const Clause& c : clauses_)
        for (Lit l : c.lits) seen[lit_var(l)] = 1;
    std::vector<int> out;
    for (int v = 1; v <= num_vars_; ++v)
        if (seen[v]) out.push_back(v);
    return out;
}

bool eval_clause(const Clause& c, const std::vector<uint8_t>& assign) {
    for (Lit l : c.lits) {
        bool val = assign[lit_var(l)];
        if (l < 0) val = !val;
        if (val) return true;
    }
    return false;
}

bool CnfFormula::eval(const std::vector<uint8_t>& assign) const {
    for (const Clause& c : clauses_)
        if (!eval_clause(c, assign)) return false;
    return true;
}

void CnfFormula::append(const CnfFormula& other) {
    ensure_var(other.num_vars_);
    for (const Clause& c : other.clauses_) clauses_.push_back(c);
    for (int v = 1; v < (int)other.names_.size(); ++v)
        if (!other.names_[v].empty()) set_name(v, other.names_[v]);
}

void CnfFormula::canonicalize() {
    std::sort(clauses_.begin(), clauses_.end());
    clauses_.erase(std::unique(clauses_.begin(), clauses_.end()), clauses_.end());
}

std::string emit_dimacs(const CnfFormula& f) {
    std::ostringstream os;
    for (int v = 1; v <= f.num_vars(); ++v)
        if (!f.name_of(v).empty()) os << "c var " << v << " " << f.name_of(v) << "\n";
    os << "p cnf " << f.num_vars() << " " << f.size() << "\n";
    for (const Clause& c : f.clauses()) {
        for (Lit l : c.lits) os << l << " ";
        os << "0\n";
    }
    return os.str();
}

}  // namespace relaxec
