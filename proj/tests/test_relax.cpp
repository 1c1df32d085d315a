#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "relaxec/error.hpp"
#include "relaxec/relax.hpp"
#include "relaxec/sat.hpp"
#include "support.hpp"

using namespace relaxec;

namespace {

// exhaustive check of: exists X[E ^ S_rlx] == H ^ exists X[S_rlx]
bool relaxation_relation_holds(const RelaxSplit& s, const CnfFormula& h) {
    CnfFormula whole;
    int nv = std::max(s.e.num_vars(), s.s_rlx.num_vars());
    whole.ensure_var(nv);
    whole.append(s.e);
    whole.append(s.s_rlx);
    auto lhs = testsup::exists_table(whole, s.z, s.x);
    auto base = testsup::exists_table(s.s_rlx, s.z, s.x);
    std::vector<uint8_t> assign(std::max(nv, h.num_vars()) + 1, 0);
    for (uint64_t i = 0; i < lhs.size(); ++i) {
        testsup::set_assignment(assign, s.z, i);
        bool rhs = h.eval(assign) && base[i];
        if ((bool)lhs[i] != rhs) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("relax_general: empty E gives constant 1") {
    RelaxSplit s;
    s.e.ensure_var(2);
    s.s_rlx.ensure_var(2);
    s.s_rlx.add_clause({1, 2});
    s.x = {1};
    s.z = {2};
    CnfFormula h = relax_general(s);
    CHECK(h.size() == 0);
}

TEST_CASE("relax_general: wire pair relaxation yields output equality") {
    // S = EQ(x1,x2) ^ buffers, E = EQ, Z = outputs
    RelaxSplit s;
    s.e.ensure_var(4);
    s.e.add_clause({-1, 2});
    s.e.add_clause({1, -2});
    s.s_rlx.ensure_var(4);
    s.s_rlx.add_clause({-3, 1});
    s.s_rlx.add_clause({3, -1});
    s.s_rlx.add_clause({-4, 2});
    s.s_rlx.add_clause({4, -2});
    s.x = {1, 2};
    s.z = {3, 4};
    CnfFormula h = relax_general(s);
    CnfFormula eq;
    eq.ensure_var(4);
    eq.add_clause({-3, 4});
    eq.add_clause({3, -4});
    CHECK(testsup::equivalent(h, eq, {3, 4}));
    CHECK(relaxation_relation_holds(s, h));
}

TEST_CASE("relax_general equisatisfiability on random splits") {
    std::mt19937_64 rng(47);
    for (int t = 0; t < 150; ++t) {
        int nv = 4 + (int)(rng() % 11);  // up to 14 vars
        CnfFormula whole = testsup::random_cnf(rng, nv, 3 + (int)(rng() % (2 * nv)));
        RelaxSplit s;
        s.e.ensure_var(nv);
        s.s_rlx.ensure_var(nv);
        for (const Clause& c : whole.clauses())
            (rng() % 3 == 0 ? s.e : s.s_rlx).add_clause(c);
        for (int v = 1; v <= nv; ++v) (rng() % 2 ? s.x : s.z).push_back(v);
        CnfFormula h = relax_general(s);
        REQUIRE(relaxation_relation_holds(s, h));
        // S equisatisfiable with H ^ S_rlx
        CnfFormula sfull, hrlx;
        sfull.ensure_var(nv);
        sfull.append(s.e);
        sfull.append(s.s_rlx);
        hrlx.ensure_var(std::max(nv, h.num_vars()));
        hrlx.append(h);
        hrlx.append(s.s_rlx);
        CHECK(sat::solve(sfull).sat() == sat::solve(hrlx).sat());
    }
}

TEST_CASE("extract_interpolant: shared-variable basics") {
    // A = {(y)}, B = {(-y)}: H = {(y)}
    CnfFormula a(1), b(1);
    a.add_clause({1});
    b.add_clause({-1});
    CnfFormula h = extract_interpolant(a, b, {}, {1}, {});
    REQUIRE(h.size() == 1);
    CHECK(h.clauses()[0] == *normalize_clause({1}));
}

TEST_CASE("extract_interpolant: x -> y with fact x") {
    // A = (x -> y) ^ (x), B = {(-y)}; Y = {y}: H = {(y)}
    CnfFormula a(2), b(2);
    a.add_clause({-1, 2});  // x=1, y=2
    a.add_clause({1});
    b.add_clause({-2});
    CnfFormula h = extract_interpolant(a, b, {1}, {2}, {});
    REQUIRE(h.size() == 1);
    CHECK(h.clauses()[0] == *normalize_clause({2}));
}

TEST_CASE("extract_interpolant rejects satisfiable A ^ B") {
    CnfFormula a(2), b(2);
    a.add_clause({1});
    b.add_clause({2});
    bool threw = false;
    try {
        extract_interpolant(a, b, {}, {1, 2}, {});
    } catch (const Error& e) {
        threw = e.kind() == ErrorKind::NotUnsat;
    }
    CHECK(threw);
}

TEST_CASE("interpolant iff-test: both conditions against random instances") {
    std::mt19937_64 rng(53);
    int done = 0;
    for (int t = 0; t < 400 && done < 60; ++t) {
        int nx = 1 + (int)(rng() % 3), ny = 1 + (int)(rng() % 3), nz = 1 + (int)(rng() % 3);
        // vars: X = 1..nx, Y = nx+1..nx+ny, Z = nx+ny+1..
        std::vector<int> xs, ys, zs;
        for (int v = 1; v <= nx; ++v) xs.push_back(v);
        for (int v = nx + 1; v <= nx + ny; ++v) ys.push_back(v);
        for (int v = nx + ny + 1; v <= nx + ny + nz; ++v) zs.push_back(v);
        int nv = nx + ny + nz;
        CnfFormula a(nv), b(nv);
        std::uniform_int_distribution<int> pick_xy(0, nx + ny - 1);
        std::uniform_int_distribution<int> sign(0, 1);
        for (int c = 0; c < 2 + (int)(rng() % 4); ++c) {
            std::vector<Lit> lits;
            for (int i = 0; i < 1 + (int)(rng() % 3); ++i) {
                int idx = pick_xy(rng);
                int v = idx < nx ? xs[idx] : ys[idx - nx];
                lits.push_back(sign(rng) ? v : -v);
            }
            a.add_clause(lits);
        }
        std::uniform_int_distribution<int> pick_yz(0, ny + nz - 1);
        for (int c = 0; c < 2 + (int)(rng() % 4); ++c) {
            std::vector<Lit> lits;
            for (int i = 0; i < 1 + (int)(rng() % 3); ++i) {
                int idx = pick_yz(rng);
                int v = idx < ny ? ys[idx] : zs[idx - ny];
                lits.push_back(sign(rng) ? v : -v);
            }
            b.add_clause(lits);
        }
        CnfFormula ab(nv);
        ab.append(a);
        ab.append(b);
        if (sat::solve(ab).sat()) continue;
        ++done;
        CnfFormula h = extract_interpolant(a, b, xs, ys, zs);
        // interpolant contract
        CnfFormula hb(std::max(nv, h.num_vars()));
        hb.append(h);
        hb.append(b);
        CHECK(sat::solve(hb).unsat());
        for (const Clause& c : h.clauses()) CHECK(sat::implies(a, c));
        // and H satisfies the PQE relation: exists W[A^B] == H ^ exists W[B]
        std::vector<int> w;
        for (int v : xs) w.push_back(v);
        for (int v : zs) w.push_back(v);
        auto b_table = testsup::exists_table(b, ys, w);
        std::vector<uint8_t> assign(std::max(nv, h.num_vars()) + 1, 0);
        for (uint64_t i = 0; i < b_table.size(); ++i) {
            testsup::set_assignment(assign, ys, i);
            CHECK_FALSE((h.eval(assign) && b_table[i]));  // lhs is constant 0
        }
    }
    CHECK(done >= 40);
}

TEST_CASE("broken_interpolant: counterexample extends to an A ^ B model") {
    // A = {(y1)}, B = {(y1 v z)}: H = 1... A->H trivial; H^B SAT
    CnfFormula a(2), b(2);
    a.add_clause({1});       // y1
    b.add_clause({1, 2});    // y1 v z
    BrokenInterpolant r = broken_interpolant(a, b, {}, {1}, {2});
    REQUIRE(r.counterexample.has_value());
    REQUIRE(r.extension.has_value());
    CnfFormula ab(2);
    ab.append(a);
    ab.append(b);
    CHECK(ab.eval(*r.extension));
}

TEST_CASE("broken_interpolant degenerates to an interpolant when A ^ B unsat") {
    CnfFormula a(1), b(1);
    a.add_clause({1});
    b.add_clause({-1});
    BrokenInterpolant r = broken_interpolant(a, b, {}, {1}, {});
    CHECK_FALSE(r.counterexample.has_value());
    CnfFormula hb(1);
    hb.append(r.h);
    hb.append(b);
    CHECK(sat::solve(hb).unsat());
}

TEST_CASE("broken_interpolant extension property on random SAT instances") {
    std::mt19937_64 rng(59);
    int done = 0;
    for (int t = 0; t < 500 && done < 200; ++t) {
        int nx = 1 + (int)(rng() % 3), ny = 2 + (int)(rng() % 3), nz = 1 + (int)(rng() % 3);
        std::vector<int> xs, ys, zs;
        for (int v = 1; v <= nx; ++v) xs.push_back(v);
        for (int v = nx + 1; v <= nx + ny; ++v) ys.push_back(v);
        for (int v = nx + ny + 1; v <= nx + ny + nz; ++v) zs.push_back(v);
        int nv = nx + ny + nz;
        CnfFormula a(nv), b(nv);
        std::uniform_int_distribution<int> sign(0, 1);
        auto mk = [&](const std::vector<int>& pool1, const std::vector<int>& pool2,
                      CnfFormula& f, int n) {
            std::vector<int> pool = pool1;
            pool.insert(pool.end(), pool2.begin(), pool2.end());
            std::uniform_int_distribution<int> pick(0, (int)pool.size() - 1);
            for (int c = 0; c < n; ++c) {
                std::vector<Lit> lits;
                for (int i = 0; i < 1 + (int)(rng() % 3); ++i) {
                    int v = pool[pick(rng)];
                    lits.push_back(sign(rng) ? v : -v);
                }
                f.add_clause(lits);
            }
        };
        mk(xs, ys, a, 2 + (int)(rng() % 3));
        mk(ys, zs, b, 2 + (int)(rng() % 3));
        CnfFormula ab(nv);
        ab.append(a);
        ab.append(b);
        if (sat::solve(ab).unsat()) continue;
        BrokenInterpolant r = broken_interpolant(a, b, xs, ys, zs);
        // A -> H
        for (const Clause& c : r.h.clauses()) REQUIRE(sat::implies(a, c));
        if (!r.counterexample.has_value()) continue;
        ++done;
        REQUIRE(r.extension.has_value());
        REQUIRE(ab.eval(*r.extension));
        // extension agrees with the counterexample on Y u Z
        for (Lit l : *r.counterexample)
            REQUIRE((*r.extension)[lit_var(l)] == (l > 0 ? 1 : 0));
    }
    CHECK(done >= 200);
}

TEST_CASE("compare_relaxations on a miter with identical logic below the cut") {
    Netlist n;
    n.inputs = {"p", "q", "r"};
    n.gates = {{"m", GateOp::And, {"p", "q"}},
               {"n", GateOp::Xor, {"q", "r"}},
               {"z", GateOp::Or, {"m", "n"}}};
    n.outputs = {"z"};
    Netlist b1 = bufferize(n), b2 = bufferize(n);
    CutSplit split = make_cut_split(b1, b2, 1);
    RelaxationReport rep = compare_relaxations(split);
    CHECK(rep.replacing_verified);
    CHECK(rep.separating_verified);
    // the separating certificate needs only EQ ^ F_M
    CHECK(rep.eq_cut_separating_from_fm_alone);
    // equivalent miter: H^r plays the interpolant role against F_L ^ neq
    CHECK(rep.replacing_blocks_fl);

    // inequivalent miter: the implication is broken
    Netlist bugged = n;
    bugged.gates[2].op = GateOp::Nor;
    Netlist b3 = bufferize(bugged);
    CutSplit split2 = make_cut_split(b1, b3, 1);
    RelaxationReport rep2 = compare_relaxations(split2);
    CHECK(rep2.replacing_verified);
    CHECK_FALSE(rep2.replacing_blocks_fl);
}
