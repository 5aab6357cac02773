#include <CLI11.hpp>

#include "qplof/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Exact quadratic programming over linearly ordered fields"};
    app.require_subcommand(1);

    qplof::cli::SolveOptions solve_opts;
    CLI::App* solve = app.add_subcommand("solve", "Solve an instance document");
    solve->add_option("instance", solve_opts.path, "instance JSON path")->required();
    solve->add_flag("--check", solve_opts.check, "verify the verdict with certificates and oracles");
    solve->add_flag("--stats", solve_opts.stats, "include wall-clock time in the stats block");
    solve->add_option("--seed", solve_opts.seed, "seed for randomized checks");

    qplof::cli::GenOptions gen_opts;
    CLI::App* gen = app.add_subcommand("gen", "Generate instance documents");
    gen->add_option("--n", gen_opts.n, "number of variables");
    gen->add_option("--m", gen_opts.m, "number of constraint rows");
    gen->add_option("--bound", gen_opts.bound, "coefficient magnitude bound");
    gen->add_option("--shape", gen_opts.shape,
                    "generic|convex|lp|infeasible|unbounded-biased");
    gen->add_option("--seed", gen_opts.seed, "base seed");
    gen->add_option("--count", gen_opts.count, "number of instances");
    gen->add_option("--out-dir", gen_opts.out_dir, "output directory");
    gen->add_option("--field", gen_opts.field, "rational|ratfunc-eps");

    qplof::cli::VerifyOptions verify_opts;
    CLI::App* verify = app.add_subcommand("verify", "Re-check a stored result");
    verify->add_option("instance", verify_opts.instance_path, "instance JSON path")->required();
    verify->add_option("result", verify_opts.result_path, "result JSON path")->required();

    qplof::cli::OracleOptions oracle_opts;
    CLI::App* oracle = app.add_subcommand("oracle", "Cross-check solver against oracles");
    oracle->add_option("--n", oracle_opts.n, "number of variables");
    oracle->add_option("--m", oracle_opts.m, "number of constraint rows");
    oracle->add_option("--bound", oracle_opts.bound, "coefficient magnitude bound");
    oracle->add_option("--shape", oracle_opts.shape,
                       "generic|convex|lp|infeasible|unbounded-biased");
    oracle->add_option("--seed", oracle_opts.seed, "base seed");
    oracle->add_option("--count", oracle_opts.count, "number of instances");
    oracle->add_option("--field", oracle_opts.field, "rational|ratfunc-eps");

    CLI11_PARSE(app, argc, argv);

    if (solve->parsed()) return qplof::cli::cmd_solve(solve_opts);
    if (gen->parsed()) return qplof::cli::cmd_gen(gen_opts);
    if (verify->parsed()) return qplof::cli::cmd_verify(verify_opts);
    return qplof::cli::cmd_oracle(oracle_opts);
}
