#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "relaxec/sat.hpp"
#include "support.hpp"

using namespace relaxec;

TEST_CASE("basics") {
    CnfFormula f;
    f.add_clause({1});
    f.add_clause({-1});
    CHECK(sat::solve(f).status == sat::Status::Unsat);

    CnfFormula empty;
    auto r = sat::solve(empty);
    CHECK(r.status == sat::Status::Sat);

    CnfFormula g;
    g.add_clause({1, 2});
    g.add_clause({-1, 2});
    auto r2 = sat::solve(g);
    REQUIRE(r2.status == sat::Status::Sat);
    CHECK(r2.model[2] == 1);  // y is forced in every model
}

TEST_CASE("implies") {
    CnfFormula f;
    f.add_clause({1});
    CHECK(sat::implies(f, *normalize_clause({1, 2})));

    CnfFormula empty;
    CHECK_FALSE(sat::implies(empty, *normalize_clause({1})));

    // AND-gate encoding implies its own cover clause
    CnfFormula a;
    a.add_clause({-3, 1});
    a.add_clause({-3, 2});
    a.add_clause({3, -1, -2});
    CHECK(sat::implies(a, *normalize_clause({3, -1, -2})));
    CHECK_FALSE(sat::implies(a, *normalize_clause({3})));
}

TEST_CASE("assumptions and failed cores") {
    CnfFormula f;
    f.add_clause({-1, 2});   // 1 -> 2
    f.add_clause({-2, 3});   // 2 -> 3
    sat::Solver s;
    s.add_formula(f);
    auto r = s.solve({1, -3});
    REQUIRE(r.status == sat::Status::Unsat);
    CHECK_FALSE(r.failed.empty());
    // the core must itself be unsatisfiable with f
    sat::Solver s2;
    s2.add_formula(f);
    CHECK(s2.solve(r.failed).status == sat::Status::Unsat);

    CHECK(s.solve({1}).status == sat::Status::Sat);
    CHECK(s.solve({-3}).status == sat::Status::Sat);
}

TEST_CASE("incremental use keeps earlier clauses") {
    sat::Solver s;
    s.add_clause({1, 2});
    CHECK(s.solve().status == sat::Status::Sat);
    s.add_clause({-1});
    s.add_clause({-2});
    CHECK(s.solve().status == sat::Status::Unsat);
}

TEST_CASE("agreement with exhaustive enumeration on random formulas") {
    std::mt19937_64 rng(11);
    int checked = 0;
    for (int t = 0; t < 500; ++t) {
        int nv = 3 + (int)(rng() % 14);  // up to 16 vars
        int nc = 2 + (int)(rng() % (3 * nv));
        CnfFormula f = testsup::random_cnf(rng, nv, nc);
        std::vector<int> vars;
        for (int v = 1; v <= nv; ++v) vars.push_back(v);
        bool expect = testsup::brute_sat(f, vars);
        auto r = sat::solve(f);
        REQUIRE(r.status == (expect ? sat::Status::Sat : sat::Status::Unsat));
        if (r.status == sat::Status::Sat) {
            // model must satisfy every clause
            CHECK(f.eval(r.model));
        }
        ++checked;
    }
    CHECK(checked == 500);
}

TEST_CASE("determinism: identical inputs and seed give identical stats") {
    std::mt19937_64 rng(13);
    CnfFormula f = testsup::random_cnf(rng, 14, 60);
    auto r1 = sat::solve(f, {}, 42);
    auto r2 = sat::solve(f, {}, 42);
    CHECK(r1.status == r2.status);
    CHECK(r1.stats.decisions == r2.stats.decisions);
    CHECK(r1.stats.conflicts == r2.stats.conflicts);
    CHECK(r1.stats.propagations == r2.stats.propagations);
    if (r1.status == sat::Status::Sat) CHECK(r1.model == r2.model);
}

TEST_CASE("conflict budget reports Budget, never a wrong answer") {
    std::mt19937_64 rng(17);
    // unsat pigeonhole-ish instance: 4 pigeons, 3 holes
    CnfFormula f;
    auto v = [&](int p, int h) { return p * 3 + h + 1; };
    for (int p = 0; p < 4; ++p) f.add_clause({v(p, 0), v(p, 1), v(p, 2)});
    for (int h = 0; h < 3; ++h)
        for (int p1 = 0; p1 < 4; ++p1)
            for (int p2 = p1 + 1; p2 < 4; ++p2) f.add_clause({-v(p1, h), -v(p2, h)});
    sat::Solver s;
    s.add_formula(f);
    s.set_conflict_budget(1);
    auto r = s.solve();
    CHECK((r.status == sat::Status::Budget || r.status == sat::Status::Unsat));
    sat::Solver s2;
    s2.add_formula(f);
    CHECK(s2.solve().status == sat::Status::Unsat);
}
