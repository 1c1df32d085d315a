#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "relaxec/eclor.hpp"
#include "relaxec/netlist.hpp"

namespace relaxec {

/// Median-bit multiplier: array (carry-save) multiplier over k-bit a and b,
/// single output = bit k-1 (0-based) of the 2k-bit product, pruned to the
/// output cone.
Netlist gen_mlp(int k);

/// For each N' net, the set S(v') of N'' nets that determine its value
/// under any shared input.
struct SimilarityMap {
    std::map<std::string, std::vector<std::string>> s;
    int max_size = 0;
};

struct HGatedPair {
    Netlist n1;  // every primary input gated by h
    Netlist n2;  // output gated by h
    SimilarityMap sim;
};

/// The h-gated pair: both circuits compute Mlp_k when h=1 and 0 when h=0,
/// so they are equivalent, but N1 has no internal net independent of h.
HGatedPair gen_hgated_pair(int k);

/// Replaces one binary gate above min_level with a different binary op.
/// Deterministic in seed; retries derived seeds until the result provably
/// differs from the original (miter SAT check).
Netlist inject_bug(const Netlist& n, int min_level, uint64_t seed);

struct ExperimentRow {
    std::string id;
    std::vector<double> values;  // aligned with ExperimentReport::columns
    std::string verdict;
    bool alpha_checked = false;  // verdict agrees with a direct alpha call
    std::string note;
};

struct ExperimentReport {
    std::string name;
    std::vector<std::string> columns;
    std::vector<ExperimentRow> rows;
    std::map<std::string, double> summary;

    std::string to_csv() const;
    std::string to_json() const;
};

struct ExperimentParams {
    int k_min = 4;
    int k_max = 6;
    int seeds = 20;
    int bug_k = 8;
    int cut = 3;
    int jobs = 1;
    uint64_t seed = 0;
    std::string dump_dir;  // when set, BLIF dumps of generated circuits
    EcOptions ec;
};

/// name: "table1" (cut image vs boundary formula), "table2" (EC-LoR* on
/// h-gated pairs), "table3" (alpha vs beta on seeded buggy multipliers).
ExperimentReport run_experiment(const std::string& name, const ExperimentParams& params);

}  // namespace relaxec
