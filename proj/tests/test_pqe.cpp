#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "relaxec/error.hpp"
#include "relaxec/pqe.hpp"
#include "support.hpp"

using namespace relaxec;

namespace {

// identical wires: A = EQ(x',x''), B = buffers z'<->x', z''<->x'', W={x',x''}
// vars: x'=1 x''=2 z'=3 z''=4
PqeProblem wire_problem() {
    PqeProblem p;
    p.a.ensure_var(4);
    p.a.add_clause({-1, 2});
    p.a.add_clause({1, -2});
    p.b.ensure_var(4);
    p.b.add_clause({-3, 1});
    p.b.add_clause({3, -1});
    p.b.add_clause({-4, 2});
    p.b.add_clause({4, -2});
    p.w = {1, 2};
    return p;
}

// A = EQ(inputs), B encodes N'=AND(a,b), N''=OR(c,d); W = everything but outputs
// vars: a=1 b=2 c=3 d=4 z1=5 z2=6
PqeProblem and_or_problem() {
    PqeProblem p;
    p.a.ensure_var(6);
    p.a.add_clause({-1, 3});
    p.a.add_clause({1, -3});
    p.a.add_clause({-2, 4});
    p.a.add_clause({2, -4});
    p.b.ensure_var(6);
    p.b.add_clause({-5, 1});
    p.b.add_clause({-5, 2});
    p.b.add_clause({5, -1, -2});
    p.b.add_clause({6, -3});
    p.b.add_clause({6, -4});
    p.b.add_clause({-6, 3, 4});
    p.w = {1, 2, 3, 4};
    return p;
}

// Equivalence of two formulas over the B-producible V-points only:
// don't-care points (exists W[B] = 0) may differ.
bool equal_on_producible(const PqeProblem& p, const CnfFormula& f, const CnfFormula& g) {
    auto v = p.free_vars();
    auto w = p.quantified_vars();
    auto b_table = testsup::exists_table(p.b, v, w);
    int nv = std::max({f.num_vars(), g.num_vars(), p.num_vars()});
    std::vector<uint8_t> assign(nv + 1, 0);
    for (uint64_t i = 0; i < b_table.size(); ++i) {
        if (!b_table[i]) continue;
        testsup::set_assignment(assign, v, i);
        if (f.eval(assign) != g.eval(assign)) return false;
    }
    return true;
}

// Independent check of the defining equivalence by enumeration.
bool oracle_check(const PqeProblem& p, const CnfFormula& astar) {
    auto v = p.free_vars();
    auto w = p.quantified_vars();
    CnfFormula ab;
    ab.ensure_var(p.num_vars());
    ab.append(p.a);
    ab.append(p.b);
    auto ab_table = testsup::exists_table(ab, v, w);
    auto b_table = testsup::exists_table(p.b, v, w);
    int nv = std::max(astar.num_vars(), p.num_vars());
    std::vector<uint8_t> assign(nv + 1, 0);
    for (uint64_t i = 0; i < ab_table.size(); ++i) {
        testsup::set_assignment(assign, v, i);
        bool lhs = ab_table[i];
        bool rhs = astar.eval(assign) && b_table[i];
        if (lhs != rhs) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("oracle: identical wires produce the output equality") {
    PqeProblem p = wire_problem();
    PqeSolution s = pqe_oracle(p);
    REQUIRE(s.astar.size() == 2);
    CHECK(s.astar.clauses()[0] == *normalize_clause({-3, 4}));
    CHECK(s.astar.clauses()[1] == *normalize_clause({3, -4}));
    CHECK(oracle_check(p, s.astar));
}

TEST_CASE("oracle: empty A gives constant 1") {
    PqeProblem p = wire_problem();
    p.a = CnfFormula(4);
    PqeSolution s = pqe_oracle(p);
    CHECK(s.astar.size() == 0);
}

TEST_CASE("oracle: AND vs OR excludes exactly (z1=1, z2=0)") {
    PqeProblem p = and_or_problem();
    PqeSolution s = pqe_oracle(p);
    CHECK(oracle_check(p, s.astar));
    // falsifies exactly the point z1=1, z2=0 among producible points
    std::vector<uint8_t> assign(7, 0);
    assign[5] = 1;
    assign[6] = 0;
    CHECK_FALSE(s.astar.eval(assign));
    assign[5] = 0;
    assign[6] = 1;
    CHECK(s.astar.eval(assign));
    assign[6] = 0;
    CHECK(s.astar.eval(assign));
    assign[5] = assign[6] = 1;
    CHECK(s.astar.eval(assign));
}

TEST_CASE("oracle bound errors") {
    PqeProblem p;
    p.a.ensure_var(26);
    p.a.add_clause({1, 26});
    p.b.ensure_var(26);
    for (int v = 1; v <= 25; ++v) p.b.add_clause({v, v + 1});
    p.w = {26};
    CHECK_THROWS_AS(pqe_oracle(p), Error);
}

TEST_CASE("solver: rule (c) discharges an unresolvable W-clause") {
    // A = {(v or y)}, y quantified, no clause contains -y
    PqeProblem p;
    p.a.ensure_var(2);
    p.a.add_clause({1, 2});  // v=1, y=2
    p.b.ensure_var(2);
    p.w = {2};
    PqeSolution s = pqe_solve(p);
    CHECK(s.astar.size() == 0);  // constant 1
    CHECK(s.stats.branches == 0);
}

TEST_CASE("solver: identical wires match the oracle") {
    PqeProblem p = wire_problem();
    PqeSolution s = pqe_solve(p);
    PqeSolution o = pqe_oracle(p);
    CHECK(equal_on_producible(p, s.astar, o.astar));
    CHECK(oracle_check(p, s.astar));
    CHECK(verify_pqe_solution(p, s));
}

TEST_CASE("solver: resolvent generation on a forced conflict") {
    // A = {(w)}, B = {(-w v v)}: Astar must be (v)
    PqeProblem p;
    p.a.ensure_var(2);
    p.a.add_clause({2});       // w
    p.b.ensure_var(2);
    p.b.add_clause({-2, 1});   // w -> v
    p.w = {2};
    PqeSolution s = pqe_solve(p);
    REQUIRE(s.astar.size() == 1);
    CHECK(s.astar.clauses()[0] == *normalize_clause({1}));
    CHECK(s.stats.resolvents >= 1);
    CHECK(verify_pqe_solution(p, s));
}

TEST_CASE("solver vs oracle on random instances") {
    std::mt19937_64 rng(31);
    int ran = 0;
    for (int t = 0; t < 300; ++t) {
        int total = 4 + (int)(rng() % 11);  // |V u W| <= 14
        int ncl = 3 + (int)(rng() % (2 * total));
        CnfFormula whole = testsup::random_cnf(rng, total, ncl);
        // split clauses between A and B, variables between V and W
        PqeProblem p;
        p.a.ensure_var(total);
        p.b.ensure_var(total);
        for (const Clause& c : whole.clauses())
            (rng() % 3 == 0 ? p.a : p.b).add_clause(c);
        for (int v = 1; v <= total; ++v)
            if (rng() % 2) p.w.push_back(v);
        PqeSolution s = pqe_solve(p);
        PqeSolution o = pqe_oracle(p);
        REQUIRE(oracle_check(p, s.astar));
        REQUIRE(oracle_check(p, o.astar));
        REQUIRE(equal_on_producible(p, s.astar, o.astar));
        REQUIRE(verify_pqe_solution(p, s));
        ++ran;
    }
    CHECK(ran == 300);
}

TEST_CASE("noise exclusion: B-side conflicts never reach Astar") {
    // B is unsatisfiable on its own; the refutation is pure noise and the
    // solution stays empty even though A holds a W-clause
    PqeProblem p;
    p.a.ensure_var(3);
    p.a.add_clause({1, 2});  // v=1, w=2
    p.b.ensure_var(3);
    p.b.add_clause({3});
    p.b.add_clause({-3});
    p.w = {2};
    PqeSolution s = pqe_solve(p);
    CHECK(s.astar.size() == 0);
    CHECK(verify_pqe_solution(p, s));
}

TEST_CASE("verify rejects weakened and absurd solutions") {
    PqeProblem p = and_or_problem();
    PqeSolution s = pqe_oracle(p);
    REQUIRE(verify_pqe_solution(p, s));

    // deleting the needed clause leaves the (1,0) point uncovered
    PqeSolution weak;
    weak.astar.ensure_var(6);
    CHECK_FALSE(verify_pqe_solution(p, weak));

    // constant 0 on a satisfiable instance
    PqeSolution zero;
    zero.astar.ensure_var(6);
    zero.astar.add_clause(std::vector<Lit>{});
    CHECK_FALSE(verify_pqe_solution(p, zero));
}

TEST_CASE("join_dsequents") {
    DSequent d0, d1;
    d0.target = d1.target = 7;
    d0.condition = {-3};
    d1.condition = {3};
    DSequent j = join_dsequents(d0, d1, 3);
    CHECK(j.condition.empty());
    CHECK(j.target == 7);

    d0.condition = {2, -3};
    d1.condition = {2, 3};
    j = join_dsequents(d0, d1, 3);
    CHECK(j.condition == std::vector<Lit>{2});

    DSequent bad = d1;
    bad.target = 8;
    CHECK_THROWS_AS(join_dsequents(d0, bad, 3), Error);
}

TEST_CASE("budget error from the solver") {
    PqeProblem p = and_or_problem();  // needs branching
    PqeOptions opts;
    opts.max_steps = 1;
    bool threw = false;
    try {
        pqe_solve(p, opts);
    } catch (const Error& e) {
        threw = e.kind() == ErrorKind::Budget;
    }
    CHECK(threw);
}

TEST_CASE("text format round-trips") {
    PqeProblem p = and_or_problem();
    std::string text = emit_pqe(p);
    CHECK(text.find("c pqe A 4\n") == 0);
    CHECK(text.find("e 1 2 3 4 0\n") != std::string::npos);
    PqeProblem q = parse_pqe(text);
    CHECK(q.a.size() == p.a.size());
    CHECK(q.b.size() == p.b.size());
    CHECK(q.w == p.w);
    for (size_t i = 0; i < p.a.size(); ++i) CHECK(q.a.clauses()[i] == p.a.clauses()[i]);
    for (size_t i = 0; i < p.b.size(); ++i) CHECK(q.b.clauses()[i] == p.b.clauses()[i]);
}
