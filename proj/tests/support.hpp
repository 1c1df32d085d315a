// Brute-force oracles and random generators shared by the test suites.
// Everything here is deliberately independent of the solver/QE/PQE code
// paths it is used to check: evaluation is plain truth-table work.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "relaxec/cnf.hpp"
#include "relaxec/netlist.hpp"

namespace testsup {

using relaxec::Clause;
using relaxec::CnfFormula;
using relaxec::Lit;
using relaxec::Netlist;

// Writes the bits of `index` into assign[] at the given variables.
void set_assignment(std::vector<uint8_t>& assign, const std::vector<int>& vars, uint64_t index);

// Truth table of f over `vars` (all vars of f must be listed): bit i of
// the result = f under assignment i.
std::vector<uint8_t> truth_table(const CnfFormula& f, const std::vector<int>& vars);

// Exhaustive SAT check.
bool brute_sat(const CnfFormula& f, const std::vector<int>& vars);

// Truth table of exists W . f over the V-assignments (V indexes the table).
std::vector<uint8_t> exists_table(const CnfFormula& f, const std::vector<int>& v_vars,
                                  const std::vector<int>& w_vars);

// Logical equivalence of two formulas over a shared variable list.
bool equivalent(const CnfFormula& a, const CnfFormula& b, const std::vector<int>& vars);

// Random k-ish CNF with mixed clause lengths 1..4.
CnfFormula random_cnf(std::mt19937_64& rng, int num_vars, int num_clauses);

// Random single-output netlist: `ninputs` inputs, depth <= `depth`.
Netlist random_netlist(std::mt19937_64& rng, int ninputs, int depth, int width,
                       const std::string& name);

}  // namespace testsup
