#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <unordered_map>

#include "relaxec/bench.hpp"
#include "relaxec/error.hpp"
#include "relaxec/sat.hpp"
#include "support.hpp"

using namespace relaxec;

namespace {

// integer-multiply reference for the median bit
bool mlp_expect(int k, uint32_t a, uint32_t b) {
    uint64_t p = (uint64_t)a * b;
    return (p >> (k - 1)) & 1;
}

uint8_t run_mlp(const SimView& sv, int k, uint32_t a, uint32_t b) {
    std::vector<uint8_t> in(2 * k), nets;
    for (int i = 0; i < k; ++i) in[i] = (a >> i) & 1;
    for (int i = 0; i < k; ++i) in[k + i] = (b >> i) & 1;
    sv.run(in, nets);
    return nets[sv.output_slots()[0]];
}

}  // namespace

TEST_CASE("gen_mlp: spot values at k=2") {
    Netlist m = gen_mlp(2);
    SimView sv(m);
    CHECK(run_mlp(sv, 2, 3, 1) == 1);  // 3*1 = 0011, bit 1
    CHECK(run_mlp(sv, 2, 3, 3) == 0);  // 9 = 1001, bit 1
}

TEST_CASE("gen_mlp matches integer multiplication exhaustively") {
    for (int k = 2; k <= 6; ++k) {
        Netlist m = gen_mlp(k);
        SimView sv(m);
        for (uint32_t a = 0; a < (1u << k); ++a)
            for (uint32_t b = 0; b < (1u << k); ++b)
                REQUIRE(run_mlp(sv, k, a, b) == mlp_expect(k, a, b));
    }
}

TEST_CASE("gen_mlp range errors") {
    CHECK_THROWS_AS(gen_mlp(1), Error);
    CHECK_THROWS_AS(gen_mlp(17), Error);
}

TEST_CASE("h-gated pair: gating semantics and similarity map") {
    for (int k = 2; k <= 3; ++k) {
        HGatedPair pair = gen_hgated_pair(k);
        SimView s1(pair.n1), s2(pair.n2);
        Netlist mlp = gen_mlp(k);
        SimView sm(mlp);
        for (uint32_t h = 0; h <= 1; ++h)
            for (uint32_t a = 0; a < (1u << k); ++a)
                for (uint32_t b = 0; b < (1u << k); ++b) {
                    std::vector<uint8_t> in(2 * k + 1), nets;
                    in[0] = (uint8_t)h;
                    for (int i = 0; i < k; ++i) in[1 + i] = (a >> i) & 1;
                    for (int i = 0; i < k; ++i) in[1 + k + i] = (b >> i) & 1;
                    s1.run(in, nets);
                    uint8_t o1 = nets[s1.output_slots()[0]];
                    s2.run(in, nets);
                    uint8_t o2 = nets[s2.output_slots()[0]];
                    uint8_t expect = h ? run_mlp(sm, k, a, b) : 0;
                    REQUIRE(o1 == expect);
                    REQUIRE(o2 == expect);
                }
        CHECK(pair.sim.max_size == 2);
        for (const auto& [net, deps] : pair.sim.s) CHECK(deps.size() <= 2);
    }
}

TEST_CASE("h-gated pair is equivalent by direct alpha check") {
    for (int k = 2; k <= 4; ++k) {
        HGatedPair pair = gen_hgated_pair(k);
        int depth = std::max(max_level(pair.n1), max_level(pair.n2));
        Miter m = build_miter(bufferize(pair.n1, depth), bufferize(pair.n2, depth));
        CHECK(sat::solve(m.formulas.alpha).unsat());
    }
}

TEST_CASE("h-gated pair has no cross-pair internal equivalences") {
    HGatedPair pair = gen_hgated_pair(2);
    SimView s1(pair.n1), s2(pair.n2);
    // a core net of N1 must differ from the same-name N2 net on some input
    // (h=0 makes N1 nets constant while N2 core nets still vary)
    int checked = 0, differing = 0;
    for (const auto& g : pair.n1.gates) {
        if (g.output.rfind("pp_", 0) != 0) continue;
        int slot1 = s1.slot_of(g.output);
        int slot2 = s2.slot_of(g.output);
        if (slot1 < 0 || slot2 < 0) continue;
        ++checked;
        for (uint32_t x = 0; x < (1u << 5); ++x) {
            std::vector<uint8_t> in(5), n1nets, n2nets;
            for (int i = 0; i < 5; ++i) in[i] = (x >> i) & 1;
            s1.run(in, n1nets);
            s2.run(in, n2nets);
            if (n1nets[slot1] != n2nets[slot2]) {
                ++differing;
                break;
            }
        }
    }
    CHECK(checked > 0);
    CHECK(differing == checked);
}

TEST_CASE("level cuts of a bufferized multiplier pair are minimal") {
    Netlist m = gen_mlp(3);
    Netlist b1 = bufferize(m), b2 = bufferize(m);
    CutPlan plan = level_cuts(b1, b2);
    // minimality: every cut net sits on some input-to-output path, so
    // removing it un-covers that path
    auto on_path = [](const Netlist& n, const std::string& net) {
        // backward: net reaches an output
        std::unordered_map<std::string, std::vector<std::string>> fanout;
        for (const auto& g : n.gates)
            for (const auto& in : g.inputs) fanout[in].push_back(g.output);
        std::set<std::string> seen = {net};
        std::vector<std::string> work = {net};
        bool reaches = false;
        for (const auto& o : n.outputs)
            if (o == net) reaches = true;
        while (!work.empty() && !reaches) {
            auto cur = work.back();
            work.pop_back();
            for (const auto& nx : fanout[cur]) {
                for (const auto& o : n.outputs)
                    if (o == nx) reaches = true;
                if (seen.insert(nx).second) work.push_back(nx);
            }
        }
        return reaches;  // forward reachability holds by construction
    };
    for (const auto& cut : plan.cuts)
        for (const auto& net : cut) {
            const Netlist& n = net[0] == '1' ? b1 : b2;
            CHECK(on_path(n, net.substr(2)));
        }
}

TEST_CASE("inject_bug: determinism, inequivalence, contract") {
    Netlist m = bufferize(gen_mlp(3));
    Netlist b1 = inject_bug(m, 1, 0);
    Netlist b2 = inject_bug(m, 1, 0);
    REQUIRE(b1.gates.size() == b2.gates.size());
    for (size_t i = 0; i < b1.gates.size(); ++i) CHECK(b1.gates[i].op == b2.gates[i].op);

    Miter mi = build_miter(m, b1);
    CHECK(sat::solve(mi.formulas.alpha).sat());

    int depth = max_level(m);
    CHECK_THROWS_AS(inject_bug(m, depth, 0), Error);
}

TEST_CASE("experiment reports serialize with fixed headers") {
    ExperimentParams p;
    p.k_min = 3;
    p.k_max = 4;
    p.seeds = 2;
    p.bug_k = 3;
    p.cut = 1;
    ExperimentReport t1 = run_experiment("table1", p);
    CHECK(t1.rows.size() == 2);
    std::string csv = t1.to_csv();
    CHECK(csv.find("id,k,quant_vars,free_vars,image_clauses") == 0);
    CHECK(t1.to_json().find("relaxec-experiment-v1") != std::string::npos);
    for (const auto& r : t1.rows) {
        CHECK(r.verdict == "H<R");
        CHECK(r.alpha_checked);
    }

    ExperimentReport t3 = run_experiment("table3", p);
    CHECK(t3.rows.size() == 2);
    CHECK(t3.summary.at("alpha_solved") == 2);
    CHECK(t3.summary.at("beta_solved") == 2);

    CHECK_THROWS_AS(run_experiment("table9", p), Error);
}

TEST_CASE("table2: EC-LoR* proves the h-gated family with short clauses") {
    ExperimentParams p;
    p.k_min = 2;
    p.k_max = 3;
    ExperimentReport t2 = run_experiment("table2", p);
    REQUIRE(t2.rows.size() == 2);
    for (const auto& r : t2.rows) {
        CHECK(r.verdict == "Equivalent");
        CHECK(r.alpha_checked);
        CHECK(r.values.back() <= 3);  // max clause width
    }
}
