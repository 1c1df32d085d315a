#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "relaxec/cnf.hpp"
#include "relaxec/encode.hpp"
#include "relaxec/netlist.hpp"
#include "relaxec/pqe.hpp"

namespace relaxec {

enum class EcMode { Exact, Approximate };
enum class EcStatus { Equivalent, Inequivalent, ConstantDegenerate, Unknown };

const char* ec_status_name(EcStatus s);

struct EcOptions {
    EcMode mode = EcMode::Exact;
    uint64_t pqe_steps = 50000;       // per-cut pqe_solve attempt
    uint64_t redund_iters = 1u << 22; // residue enumeration budget (whole run)
    uint64_t sat_conflicts = 0;       // 0 = unlimited
    uint64_t timeout_ms = 0;          // 0 = unlimited
    int approx_window = 1;            // approx F_Mi: gates in levels (i-window, i]
    bool star_preseed = true;         // relatives pre-seeding (EC-LoR*)
    uint64_t seed = 0;
};

struct ChainStep {
    int cut = 0;
    CnfFormula h;                 // over Cut_i variables
    std::vector<int> w;           // quantified set W_i
    int fm_level_lo = 0;          // F_Mi = gates with level in (lo, hi]
    int fm_level_hi = 0;
    size_t fm_clauses = 0;
    bool certified = false;       // every clause implied + termination reached
    int width_max = 0;
    uint64_t terminated_after = 0;  // evidence clauses added before termination
};

/// The sequence H_0..H_k with its cuts. H_0 = EQ(X',X''). In exact mode a
/// certified step i satisfies exists W_i[H_{i-1} ^ F_Mi] == H_i ^ exists
/// W_i[F_Mi]; the termination check of the construction is the proof.
struct BoundaryChain {
    Netlist n1, n2;               // bufferized pair the chain talks about
    CutPlan cuts;
    Miter miter;
    EcMode mode = EcMode::Exact;
    std::vector<ChainStep> steps; // steps[i] describes H_i, steps[0].h = EQ
    bool complete = false;

    const CnfFormula& h(int i) const { return steps[i].h; }
    /// PQE instance of step i (for external verification).
    PqeProblem step_problem(int i) const;
};

struct EcVerdict {
    EcStatus status = EcStatus::Unknown;
    std::optional<std::vector<uint8_t>> witness;  // model over miter variables
    CnfFormula output_boundary;                   // H_k over {z', z''}
    std::string note;                             // constant-side / budget report
    BoundaryChain chain;
    double build_ms = 0, decide_ms = 0;
};

/// One Redund probe: returns nullopt iff H_prev is redundant in
/// H_cur ^ exists W[H_prev ^ F_Mi]; otherwise a clause over the cut,
/// implied by H_prev ^ F_Mi, whose addition shrinks the residue.
std::optional<Clause> redund_check(const CnfFormula& h_prev, const CnfFormula& h_cur,
                                   const CnfFormula& f_mi, const std::vector<int>& w,
                                   const std::vector<int>& cut_vars,
                                   const EcOptions& opts = {});

/// Builds H_1..H_k (or stops after `up_to_cut` when >= 0).
BoundaryChain build_boundary_chain(const Netlist& n1, const Netlist& n2, EcMode mode,
                                   const EcOptions& opts = {}, int up_to_cut = -1);

EcVerdict ec_lor(const Netlist& n1, const Netlist& n2, EcMode mode, const EcOptions& opts = {});

/// EC-LoR*: approximate boundary formulas over per-level slices plus the
/// relatives pre-seeding heuristic. Never reports Inequivalent.
EcVerdict ec_lor_star(const Netlist& n1, const Netlist& n2, const EcOptions& opts = {});

/// A boundary formula together with how it was verified.
struct VerifiedBoundary {
    CnfFormula h;       // over the miter variables of the pair
    int cut = -1;
    bool verified = false;
    std::string method;  // "exhaustive-sim" | "corollary-identical" | "chain"
};

/// EQ(Cut'_i, Cut''_i), verified via the equivalence-cut corollary when the
/// sub-circuits below the cut are structurally identical; otherwise via
/// exhaustive simulation when small enough, else unverified.
VerifiedBoundary eq_cut_boundary(const Netlist& n1, const Netlist& n2, int cut_index);

struct BetaWitness {
    std::vector<uint8_t> model;      // beta-model over miter variables
    std::vector<Lit> cut_assignment; // (q', q'')
};

/// Relaxed-formula route: SAT(beta) with beta = H ^ G_rlx ^ neq proves
/// inequivalence without a counterexample; UNSAT proves equivalence.
/// Throws BoundaryNotVerified when hb carries no certificate.
std::optional<BetaWitness> prove_inequivalence_via_beta(const Netlist& n1, const Netlist& n2,
                                                        const VerifiedBoundary& hb,
                                                        const EcOptions& opts = {});

/// Extends a beta-model to a full alpha-model by realigning inputs below
/// the cut (the "extra work" of turning a beta witness into a
/// counterexample). Returns the alpha-model.
std::optional<std::vector<uint8_t>> extend_beta_witness(const Netlist& n1, const Netlist& n2,
                                                        const VerifiedBoundary& hb,
                                                        const BetaWitness& w);

/// Definition-1 check by exhaustive simulation: (a) every shared-input
/// execution satisfies H; (b) H is 0 on every cut assignment producible
/// under free inputs but not under equal inputs. Per-side input limit 16;
/// the producible-pair product is capped.
bool validate_boundary(const CnfFormula& h, int cut_index, const Netlist& n1, const Netlist& n2);

/// JSON verdict report (stable schema, no wall-clock unless included).
std::string verdict_to_json(const EcVerdict& v, bool with_timings = false);

}  // namespace relaxec
