#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "relaxec/error.hpp"
#include "relaxec/qe.hpp"
#include "support.hpp"

using namespace relaxec;

TEST_CASE("exists y . (v or y) is constant 1") {
    CnfFormula f(2);
    f.add_clause({1, 2});  // v=1, y=2
    CnfFormula r = eliminate(f, {2});
    CHECK(r.size() == 0);
}

TEST_CASE("resolution case: exists x . (z or x)(z or -x) = (z)") {
    CnfFormula f(2);
    f.add_clause({1, 2});   // z=1, x=2
    f.add_clause({1, -2});
    CnfFormula r = eliminate(f, {2});
    REQUIRE(r.size() == 1);
    CHECK(r.clauses()[0] == *normalize_clause({1}));
}

TEST_CASE("unsat formula eliminates to constant 0") {
    CnfFormula f(2);
    f.add_clause({2});
    f.add_clause({-2});
    f.add_clause({1, 2});
    CnfFormula r = eliminate(f, {2});
    REQUIRE(r.size() == 1);
    CHECK(r.clauses()[0].empty());
}

TEST_CASE("eliminate agrees with the exhaustive oracle on random formulas") {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 120; ++t) {
        int nv = 4 + (int)(rng() % 9);  // up to 12 vars
        CnfFormula f = testsup::random_cnf(rng, nv, 2 + (int)(rng() % (2 * nv)));
        std::vector<int> all = f.vars_used();
        if (all.empty()) continue;
        std::vector<int> w, v;
        for (int x : all) (rng() % 2 ? w : v).push_back(x);
        CnfFormula r = eliminate(f, w);
        // truth table of r over v must equal OR over w-extensions of f
        auto expect = testsup::exists_table(f, v, w);
        std::vector<uint8_t> assign(f.num_vars() + 1, 0);
        for (uint64_t i = 0; i < expect.size(); ++i) {
            testsup::set_assignment(assign, v, i);
            CHECK((bool)r.eval(assign) == (bool)expect[i]);
        }
    }
}

TEST_CASE("cut_image on an identical buffer pair gives the 2-clause equality") {
    Netlist n;
    n.inputs = {"x"};
    n.gates = {{"c", GateOp::Buf, {"x"}}};
    n.outputs = {"c"};
    Netlist b1 = bufferize(n), b2 = bufferize(n);
    CnfFormula r = cut_image(b1, b2, 1);
    REQUIRE(r.size() == 2);
    // models restricted to the two cut vars: exactly (0,0) and (1,1)
    auto vars = r.vars_used();
    REQUIRE(vars.size() == 2);
    auto table = testsup::truth_table(r, vars);
    CHECK(table[0] == 1);
    CHECK(table[3] == 1);
    CHECK(table[1] + table[2] == 0);
}

TEST_CASE("cut_image AND vs OR output cut excludes only (1,0)") {
    Netlist a, o;
    a.inputs = {"p", "q"};
    a.gates = {{"z", GateOp::And, {"p", "q"}}};
    a.outputs = {"z"};
    o = a;
    o.gates[0].op = GateOp::Or;
    CnfFormula r = cut_image(bufferize(a), bufferize(o), 1);
    auto vars = r.vars_used();
    REQUIRE(vars.size() == 2);
    // var order: 1:z before 2:z; index bit0 = and output, bit1 = or output
    auto table = testsup::truth_table(r, vars);
    CHECK(table[0b00] == 1);
    CHECK(table[0b10] == 1);  // and=0, or=1
    CHECK(table[0b11] == 1);
    CHECK(table[0b01] == 0);  // and=1, or=0: not producible under equal inputs
}

TEST_CASE("budget error is reported, never a wrong answer") {
    std::mt19937_64 rng(29);
    CnfFormula f = testsup::random_cnf(rng, 14, 10);
    QeOptions opts;
    opts.max_models = 2;
    bool threw = false;
    try {
        eliminate(f, {1}, opts);
    } catch (const Error& e) {
        threw = e.kind() == ErrorKind::Budget;
    }
    CHECK(threw);
}
