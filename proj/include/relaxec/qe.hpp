#pragma once

#include <cstdint>
#include <vector>

#include "relaxec/cnf.hpp"
#include "relaxec/netlist.hpp"

namespace relaxec {

struct QeOptions {
    uint64_t max_models = 1u << 20;   // image enumeration cap
    uint64_t max_clauses = 200000;    // result-size cap
};

/// Complete quantifier elimination: returns R over vars(f) \ W with
/// R equivalent to exists W . f. Model enumeration with blocking clauses
/// collects the image; result clauses are greedily widened while still
/// implied by f. Throws Budget when a cap is hit, never returns a wrong
/// answer.
CnfFormula eliminate(const CnfFormula& f, const std::vector<int>& w, const QeOptions& opts = {});

/// Image of cut i of the (EQ ^ F_M) slice of a bufferized pair:
/// R_cut over the cut variables, equivalent to exists W . EQ ^ F_{M_i}.
CnfFormula cut_image(const Netlist& n1, const Netlist& n2, int cut_index,
                     const QeOptions& opts = {});

}  // namespace relaxec
