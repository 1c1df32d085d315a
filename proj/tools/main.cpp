#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "relaxec/bench.hpp"
#include "relaxec/eclor.hpp"
#include "relaxec/error.hpp"
#include "relaxec/qe.hpp"
#include "relaxec/sat.hpp"

using namespace relaxec;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw Error(ErrorKind::Usage, "cannot open " + path);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream os(path);
    if (!os) throw Error(ErrorKind::Usage, "cannot write " + path);
    os << text;
}

Netlist load_blif(const std::string& path) { return parse_blif(read_file(path)); }

uint64_t env_seed() {
    const char* s = std::getenv("RELAXEC_SEED");
    return s ? std::strtoull(s, nullptr, 10) : 0;
}

struct CommonOpts {
    uint64_t pqe_steps = 50000;
    uint64_t sat_conflicts = 0;
    uint64_t timeout_ms = 0;
    uint64_t seed = env_seed();

    EcOptions ec() const {
        EcOptions o;
        o.pqe_steps = pqe_steps;
        o.sat_conflicts = sat_conflicts;
        o.timeout_ms = timeout_ms;
        o.seed = seed;
        return o;
    }
};

void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--pqe-steps", c.pqe_steps, "pqe engine step budget");
    cmd->add_option("--sat-conflicts", c.sat_conflicts, "sat conflict budget (0 = unlimited)");
    cmd->add_option("--timeout-ms", c.timeout_ms, "wall-clock budget (0 = unlimited)");
    cmd->add_option("--seed", c.seed, "engine seed (default: RELAXEC_SEED)");
}

int exit_code_of(EcStatus s) {
    switch (s) {
        case EcStatus::Equivalent:
        case EcStatus::ConstantDegenerate: return 0;  // alpha is unsatisfiable
        case EcStatus::Inequivalent: return 1;
        case EcStatus::Unknown: return 2;
    }
    return 3;
}

std::pair<Netlist, Netlist> load_pair(const std::string& pa, const std::string& pb) {
    Netlist p1 = prune_dead(parse_blif(read_file(pa)));
    Netlist p2 = prune_dead(parse_blif(read_file(pb)));
    int depth = std::max(max_level(p1), max_level(p2));
    return {bufferize(p1, depth), bufferize(p2, depth)};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"relaxec: combinational equivalence checking by logic relaxation"};
    app.require_subcommand(1);

    // ---- check ----
    std::string check_a, check_b, check_mode = "exact", check_json;
    bool check_timings = false;
    CommonOpts check_opts;
    auto* check = app.add_subcommand("check", "decide equivalence of two circuits");
    check->add_option("a", check_a, "first BLIF file")->required();
    check->add_option("b", check_b, "second BLIF file")->required();
    check->add_option("--mode", check_mode, "exact|star")
        ->check(CLI::IsMember({"exact", "star"}));
    check->add_option("--json", check_json, "write a JSON verdict report");
    check->add_flag("--timings", check_timings, "include timings in the JSON report");
    add_common(check, check_opts);

    // ---- boundary ----
    std::string bnd_a, bnd_b;
    int bnd_cut = 1;
    std::string bnd_mode = "exact";
    CommonOpts bnd_opts;
    auto* boundary = app.add_subcommand("boundary", "boundary formula H_i for a cut");
    boundary->add_option("a", bnd_a)->required();
    boundary->add_option("b", bnd_b)->required();
    boundary->add_option("--cut", bnd_cut, "cut index")->required();
    boundary->add_option("--mode", bnd_mode)->check(CLI::IsMember({"exact", "approx"}));
    add_common(boundary, bnd_opts);

    // ---- image ----
    std::string img_a, img_b;
    int img_cut = 1;
    auto* image = app.add_subcommand("image", "cut image by quantifier elimination");
    image->add_option("a", img_a)->required();
    image->add_option("b", img_b)->required();
    image->add_option("--cut", img_cut, "cut index")->required();

    // ---- beta ----
    std::string beta_a, beta_b;
    int beta_cut = 1;
    CommonOpts beta_opts;
    auto* beta = app.add_subcommand("beta", "prove inequivalence via the relaxed formula");
    beta->add_option("a", beta_a)->required();
    beta->add_option("b", beta_b)->required();
    beta->add_option("--cut", beta_cut, "cut index")->required();
    add_common(beta, beta_opts);

    // ---- gen ----
    auto* gen = app.add_subcommand("gen", "benchmark generators");
    gen->require_subcommand(1);
    int mlp_k = 4;
    std::string mlp_out;
    auto* gen_mlp_cmd = gen->add_subcommand("mlp", "median-bit multiplier");
    gen_mlp_cmd->add_option("--k", mlp_k, "operand width")->required();
    gen_mlp_cmd->add_option("-o,--out", mlp_out, "output BLIF")->required();

    int hp_k = 4;
    std::string hp_o1, hp_o2, hp_sim;
    auto* gen_hp = gen->add_subcommand("hpair", "h-gated equivalent pair");
    gen_hp->add_option("--k", hp_k)->required();
    gen_hp->add_option("--o1", hp_o1, "BLIF for the input-gated circuit")->required();
    gen_hp->add_option("--o2", hp_o2, "BLIF for the output-gated circuit")->required();
    gen_hp->add_option("--sim", hp_sim, "write the similarity map (text)");

    std::string bug_in, bug_out;
    int bug_min_level = 1;
    uint64_t bug_seed = 0;
    auto* gen_bug = gen->add_subcommand("bug", "inject a gate bug above a level");
    gen_bug->add_option("--in", bug_in, "input BLIF")->required();
    gen_bug->add_option("--min-level", bug_min_level, "bug strictly above this level");
    gen_bug->add_option("--seed", bug_seed, "mutation seed");
    gen_bug->add_option("-o,--out", bug_out, "output BLIF")->required();

    // ---- exp ----
    std::string exp_name, exp_csv, exp_json, exp_dump;
    ExperimentParams exp_params;
    CommonOpts exp_opts;
    auto* exp = app.add_subcommand("exp", "experiment harness");
    exp->add_option("name", exp_name, "table1|table2|table3")
        ->required()
        ->check(CLI::IsMember({"table1", "table2", "table3"}));
    exp->add_option("--kmin", exp_params.k_min, "smallest k");
    exp->add_option("--kmax", exp_params.k_max, "largest k");
    exp->add_option("--seeds", exp_params.seeds, "bug seeds (table3)");
    exp->add_option("--bug-k", exp_params.bug_k, "multiplier width (table3)");
    exp->add_option("--cut", exp_params.cut, "cut index (table3)");
    exp->add_option("--jobs", exp_params.jobs, "worker threads for independent rows");
    exp->add_option("--csv", exp_csv, "write CSV report");
    exp->add_option("--json", exp_json, "write JSON report");
    exp->add_option("--dump-dir", exp_dump, "write BLIF dumps of generated circuits");
    add_common(exp, exp_opts);

    // ---- dimacs ----
    std::string dim_a, dim_b, dim_formula = "alpha", dim_out;
    int dim_cut = -1;
    auto* dimacs = app.add_subcommand("dimacs", "export miter formulas");
    dimacs->add_option("a", dim_a)->required();
    dimacs->add_option("b", dim_b)->required();
    dimacs->add_option("--formula", dim_formula, "alpha|beta")
        ->check(CLI::IsMember({"alpha", "beta"}));
    dimacs->add_option("--cut", dim_cut, "cut index (beta)");
    dimacs->add_option("-o,--out", dim_out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e);
            return 0;
        }
        std::cerr << e.what() << "\n";
        return 3;
    }

    try {
        if (*check) {
            Netlist a = load_blif(check_a), b = load_blif(check_b);
            EcOptions o = check_opts.ec();
            EcVerdict v = check_mode == "star" ? ec_lor_star(a, b, o)
                                               : ec_lor(a, b, EcMode::Exact, o);
            std::cout << ec_status_name(v.status) << "\n";
            if (!v.note.empty()) std::cout << v.note << "\n";
            if (v.witness) {
                const auto& F = v.chain.miter.formulas;
                std::cout << "beta witness: z'=" << (int)(*v.witness)[F.z1]
                          << " z''=" << (int)(*v.witness)[F.z2] << "\n";
                std::cout << "inputs':";
                for (size_t i = 0; i < v.chain.n1.inputs.size(); ++i)
                    std::cout << " " << v.chain.n1.inputs[i] << "="
                              << (int)(*v.witness)[F.x1[i]];
                std::cout << "\ninputs'':";
                for (size_t i = 0; i < v.chain.n2.inputs.size(); ++i)
                    std::cout << " " << v.chain.n2.inputs[i] << "="
                              << (int)(*v.witness)[F.x2[i]];
                std::cout << "\n";
            }
            if (!check_json.empty()) write_file(check_json, verdict_to_json(v, check_timings));
            return exit_code_of(v.status);
        }
        if (*boundary) {
            auto [b1, b2] = load_pair(bnd_a, bnd_b);
            EcMode mode = bnd_mode == "approx" ? EcMode::Approximate : EcMode::Exact;
            BoundaryChain chain = build_boundary_chain(b1, b2, mode, bnd_opts.ec(), bnd_cut);
            if ((int)chain.steps.size() <= bnd_cut) {
                std::cout << "budget exhausted before cut " << bnd_cut << "\n";
                return 2;
            }
            const ChainStep& st = chain.steps[bnd_cut];
            std::cout << "H_" << bnd_cut << ": " << st.h.size()
                      << " clauses, max width " << st.width_max << ", certificate: "
                      << (st.certified ? (mode == EcMode::Exact ? "pqe-relation (exact)"
                                                                : "pqe-relation (sliced)")
                                       : "absent")
                      << "\n";
            auto net_name = [&](int var) {
                for (const auto& [name, v] : chain.miter.alloc.map())
                    if (v == var) return name;
                return std::to_string(var);
            };
            for (const Clause& c : st.h.clauses()) {
                for (Lit l : c.lits)
                    std::cout << (l < 0 ? " -" : " ") << net_name(lit_var(l));
                std::cout << "\n";
            }
            return 0;
        }
        if (*image) {
            auto [b1, b2] = load_pair(img_a, img_b);
            CnfFormula r = cut_image(b1, b2, img_cut);
            std::cout << "R_cut: " << r.size() << " clauses over "
                      << r.vars_used().size() << " cut variables\n";
            std::cout << emit_dimacs(r);
            return 0;
        }
        if (*beta) {
            auto [b1, b2] = load_pair(beta_a, beta_b);
            VerifiedBoundary hb = eq_cut_boundary(b1, b2, beta_cut);
            std::cout << "H_" << beta_cut << " = EQ(Cut', Cut''), certificate: " << hb.method
                      << "\n";
            auto w = prove_inequivalence_via_beta(b1, b2, hb, beta_opts.ec());
            if (!w) {
                std::cout << "beta UNSAT: circuits are equivalent\n";
                return 0;
            }
            std::cout << "beta SAT: circuits are inequivalent\n";
            return 1;
        }
        if (*gen_mlp_cmd) {
            write_file(mlp_out, emit_blif(gen_mlp(mlp_k)));
            return 0;
        }
        if (*gen_hp) {
            HGatedPair pair = gen_hgated_pair(hp_k);
            write_file(hp_o1, emit_blif(pair.n1));
            write_file(hp_o2, emit_blif(pair.n2));
            if (!hp_sim.empty()) {
                std::ostringstream os;
                for (const auto& [net, deps] : pair.sim.s) {
                    os << net << ":";
                    for (const auto& d : deps) os << " " << d;
                    os << "\n";
                }
                write_file(hp_sim, os.str());
            }
            return 0;
        }
        if (*gen_bug) {
            Netlist n = load_blif(bug_in);
            write_file(bug_out, emit_blif(inject_bug(n, bug_min_level, bug_seed)));
            return 0;
        }
        if (*exp) {
            exp_params.ec = exp_opts.ec();
            exp_params.seed = exp_opts.seed;
            exp_params.dump_dir = exp_dump;
            ExperimentReport rep = run_experiment(exp_name, exp_params);
            std::cout << rep.to_csv();
            for (const auto& [k, v] : rep.summary) std::cout << "# " << k << " = " << v << "\n";
            if (!exp_csv.empty()) write_file(exp_csv, rep.to_csv());
            if (!exp_json.empty()) write_file(exp_json, rep.to_json());
            return 0;
        }
        if (*dimacs) {
            auto [b1, b2] = load_pair(dim_a, dim_b);
            std::string text;
            if (dim_formula == "alpha") {
                Miter m = build_miter(b1, b2);
                text = emit_dimacs(m.formulas.alpha);
            } else {
                if (dim_cut < 0)
                    throw Error(ErrorKind::Usage, "--cut is required for --formula beta");
                VerifiedBoundary hb = eq_cut_boundary(b1, b2, dim_cut);
                if (!hb.verified)
                    throw Error(ErrorKind::BoundaryNotVerified,
                                "no certificate for EQ(Cut', Cut'') at this cut");
                Miter m = build_miter(b1, b2);
                text = emit_dimacs(m.formulas.beta(hb.h));
            }
            if (dim_out.empty())
                std::cout << text;
            else
                write_file(dim_out, text);
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 3;
}
