#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "relaxec/cnf.hpp"

using namespace relaxec;

TEST_CASE("clause normalization sorts, dedupes, rejects tautologies") {
    auto c = normalize_clause({3, -1, 3, 2});
    REQUIRE(c.has_value());
    CHECK(c->lits == std::vector<Lit>{-1, 2, 3});
    CHECK_FALSE(normalize_clause({1, -1}).has_value());
    CHECK_FALSE(normalize_clause({2, 1, -2}).has_value());
}

TEST_CASE("formula drops tautologies silently") {
    CnfFormula f;
    CHECK(f.add_clause({1, 2}));
    CHECK_FALSE(f.add_clause({1, -1}));
    CHECK(f.size() == 1);
}

TEST_CASE("subsumption and resolution") {
    Clause a = *normalize_clause({1, 2});
    Clause b = *normalize_clause({1, 2, -3});
    CHECK(subsumes(a, b));
    CHECK_FALSE(subsumes(b, a));

    Clause c = *normalize_clause({1, 3});
    Clause d = *normalize_clause({-3, 2});
    auto r = resolve(c, d, 3);
    REQUIRE(r.has_value());
    CHECK(r->lits == std::vector<Lit>{1, 2});

    // tautological resolvent
    Clause e = *normalize_clause({1, 3});
    Clause g = *normalize_clause({-3, -1});
    CHECK_FALSE(resolve(e, g, 3).has_value());
}

TEST_CASE("eval") {
    CnfFormula f;
    f.add_clause({1, -2});
    std::vector<uint8_t> a = {0, 1, 1};
    CHECK(f.eval(a));
    a = {0, 0, 1};
    CHECK_FALSE(f.eval(a));
}

TEST_CASE("dimacs output is byte-exact") {
    CnfFormula f(2);
    f.add_clause({1, -2});
    CHECK(emit_dimacs(f) == "p cnf 2 1\n1 -2 0\n");

    CnfFormula empty;
    CHECK(emit_dimacs(empty) == "p cnf 0 0\n");

    // AND-gate encoding: 3 vars, 3 clauses
    CnfFormula g;
    g.add_clause({-3, 1});
    g.add_clause({-3, 2});
    g.add_clause({3, -1, -2});
    CHECK(emit_dimacs(g).substr(0, 10) == "p cnf 3 3\n");
}

TEST_CASE("dimacs records the name map as comments") {
    CnfFormula f;
    int a = f.new_var("a");
    int z = f.new_var("z");
    f.add_clause({-z, a});
    std::string d = emit_dimacs(f);
    CHECK(d.find("c var 1 a\n") != std::string::npos);
    CHECK(d.find("c var 2 z\n") != std::string::npos);
}
