#pragma once

#include <optional>
#include <vector>

#include "relaxec/cnf.hpp"
#include "relaxec/netlist.hpp"

namespace relaxec {

/// S = S_rlx ^ E over internal variables X and external variables Z.
struct RelaxSplit {
    CnfFormula e;      // clauses taken out by the relaxation
    CnfFormula s_rlx;  // what remains
    std::vector<int> x;  // internal (quantified) variables
    std::vector<int> z;  // external variables
};

/// H(Z) with exists X[E ^ S_rlx] == H ^ exists X[S_rlx]; S is then
/// equisatisfiable with H ^ S_rlx.
CnfFormula relax_general(const RelaxSplit& split);

/// Interpolant of A(X,Y) -> not B(Y,Z), built as a boundary formula:
/// blocks every B-producible Y-point and is implied by A. Requires
/// A ^ B unsatisfiable (NotUnsat otherwise).
CnfFormula extract_interpolant(const CnfFormula& a, const CnfFormula& b,
                               const std::vector<int>& x, const std::vector<int>& y,
                               const std::vector<int>& z);

struct BrokenInterpolant {
    CnfFormula h;  // A -> H and exists W[A ^ B] == H ^ exists W[B]
    // short counterexample (y, z) when H ^ B is satisfiable
    std::optional<std::vector<Lit>> counterexample;
    // its extension to a full A ^ B model
    std::optional<std::vector<uint8_t>> extension;
};

/// Interpolation of a possibly-broken implication A -> not B. When the
/// implication holds this degenerates to extract_interpolant; otherwise a
/// counterexample over Y u Z plus its A ^ B extension is returned.
BrokenInterpolant broken_interpolant(const CnfFormula& a, const CnfFormula& b,
                                     const std::vector<int>& x, const std::vector<int>& y,
                                     const std::vector<int>& z);

/// The alpha decomposition EQ ^ F_M ^ F_L ^ neq of a miter at a cut.
struct CutSplit {
    CnfFormula eq;
    CnfFormula f_m;   // gates below the cut
    CnfFormula f_l;   // gates above the cut
    CnfFormula neq;
    CnfFormula eq_cut;  // name-paired EQ(Cut', Cut''), empty when unpairable
    std::vector<int> cut_vars;
    int num_vars = 0;
};

CutSplit make_cut_split(const Netlist& n1, const Netlist& n2, int cut_index);

struct RelaxationReport {
    CnfFormula h_replacing;   // EQ ^ F_M taken out of exists W[alpha]
    CnfFormula h_separating;  // EQ taken out
    bool replacing_verified = false;
    bool separating_verified = false;
    // EQ(Cut', Cut'') is a separating boundary formula certified from
    // EQ ^ F_M alone (no knowledge of F_L)
    bool eq_cut_separating_from_fm_alone = false;
    // H^r's interpolant role depends on F_L: H^r ^ F_L ^ neq unsat?
    bool replacing_blocks_fl = false;
};

/// Contrast of replacing vs separating relaxation on one miter cut.
RelaxationReport compare_relaxations(const CutSplit& split);

}  // namespace relaxec
