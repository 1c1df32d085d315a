#pragma once

#include <unordered_map>
#include <vector>

#include "relaxec/cnf.hpp"
#include "relaxec/netlist.hpp"

namespace relaxec {

/// Allocates miter variables: first circuit's nets in topological order,
/// then the second's. Net names are qualified with a prefix to keep the
/// two circuits' namespaces apart.
class VarAllocator {
  public:
    int alloc(const std::string& qualified_name);
    int var_of(const std::string& qualified_name) const;
    int count() const { return next_ - 1; }
    const std::unordered_map<std::string, int>& map() const { return map_; }

  private:
    int next_ = 1;
    std::unordered_map<std::string, int> map_;
};

/// Tseitin encoding: satisfying assignments are exactly the consistent
/// executions of the netlist. Nets are registered in the allocator under
/// `prefix` + net name; the formula's name map records the same names.
CnfFormula tseitin_encode(const Netlist& n, VarAllocator& alloc, const std::string& prefix = "");

/// Clauses of a single gate z = op(a, b) appended to f.
void append_gate_clauses(CnfFormula& f, GateOp op, int z, int a, int b);

/// EQ(X1,X2): 2*|X1| binary clauses forcing x1_i = x2_i.
CnfFormula eq_formula(const std::vector<int>& x1, const std::vector<int>& x2);

enum class VarRole { Input1, Input2, Internal1, Internal2, Output1, Output2 };

struct VarRoles {
    std::vector<VarRole> role;          // 1-based by variable
    std::vector<int> cut_of;            // 1-based; -1 when not in any cut
    std::vector<std::vector<int>> cut_vars;  // per cut index, sorted

    std::vector<int> vars_with(VarRole r) const;
};

/// All the miter-level formulas of one equivalence-checking instance.
/// alpha is the clause-for-clause concatenation EQ, F_N1, F_N2, neq.
struct MiterFormulas {
    CnfFormula f_n1, f_n2;
    CnfFormula eq;       // over X1 u X2
    CnfFormula g;        // EQ ^ F_N1 ^ F_N2
    CnfFormula g_rlx;    // F_N1 ^ F_N2
    CnfFormula neq;      // (z1 v z2) ^ (-z1 v -z2)
    CnfFormula alpha;    // G ^ neq
    int z1 = 0, z2 = 0;  // output variables
    std::vector<int> x1, x2;  // input variables, in input order
    int num_vars = 0;

    /// beta(H) = H ^ G_rlx ^ neq for a cut formula H over miter variables.
    CnfFormula beta(const CnfFormula& h) const;
};

struct Miter {
    MiterFormulas formulas;
    VarRoles roles;
    VarAllocator alloc;
};

/// Builds the miter formulas for two single-output netlists. The cut plan
/// is optional; when given, roles record per-cut variable membership.
Miter build_miter(const Netlist& n1, const Netlist& n2, const CutPlan* plan = nullptr);

}  // namespace relaxec
