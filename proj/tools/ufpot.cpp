#include <iostream>

#include <CLI11.hpp>

#include "ufpot/commands.hpp"

int main(int argc, char** argv) {
  using namespace ufpot::cli;
  CLI::App app{"union-find potential-function verifier"};
  app.require_subcommand(1);

  run_options run;
  auto* run_cmd = app.add_subcommand("run", "replay a trace under full instrumentation");
  run_cmd->add_option("trace", run.trace_path, "trace file")->required();
  run_cmd->add_option("--variant", run.variant_name, "size, rank, size-nocompress or rank-nocompress");
  run_cmd->add_option("--kinds", run.kinds, "comma-separated potentials (SQRT,LOGSQ,LEVEL1,LEVEL2,ACK,LEVEL<j>) or all");
  run_cmd->add_option("--oracle-cap", run.oracle_cap, "largest n checked against the descendant-set oracle");
  run_cmd->add_flag("--fail-fast", run.fail_fast, "stop at the first violation");
  run_cmd->add_option("--out-dir", run.out_dir, "directory for report.json and finds.csv");
  run_cmd->add_option("--constant", run.constants, "override an accounting constant, e.g. sqrt.run_bound=0.1");

  gen_options gen;
  std::uint64_t gen_seed = 0;
  auto* gen_cmd = app.add_subcommand("gen", "generate a trace");
  gen_cmd->add_option("generator", gen.generator, "random or binomial")->required();
  gen_cmd->add_option("--n", gen.n, "element count (random)");
  gen_cmd->add_option("--m", gen.m, "operation count (random)");
  auto* seed_opt = gen_cmd->add_option("--seed", gen_seed, "RNG seed (default: UFPOT_SEED or built-in)");
  gen_cmd->add_option("--find-fraction", gen.find_fraction, "probability that an op is a find (random)");
  gen_cmd->add_option("--k", gen.k, "tree has 2^k nodes (binomial)");
  gen_cmd->add_option("--finds-per-leaf", gen.finds_per_leaf, "finds issued per leaf (binomial)");
  gen_cmd->add_option("--output", gen.output, "write to a file instead of standard output");

  std::vector<std::uint64_t> bound_ns;
  auto* bounds_cmd = app.add_subcommand("bounds", "print bound functions for each n");
  bounds_cmd->add_option("n", bound_ns, "element counts")->required();

  check_lemmas_options lemmas;
  std::uint64_t grid_seed = 0;
  auto* lemmas_cmd = app.add_subcommand("check-lemmas", "check the special-function inequalities on sample grids");
  auto* grid_seed_opt = lemmas_cmd->add_option("--grid-seed", grid_seed, "seed for the random grid points");
  lemmas_cmd->add_option("--grid-points", lemmas.random_points, "random points per check");
  lemmas_cmd->add_flag("--empty-grid", lemmas.empty_grid, "check nothing");

  bench_options bench;
  std::uint64_t bench_seed = 0;
  auto* bench_cmd = app.add_subcommand("bench", "time the uninstrumented structure");
  bench_cmd->add_option("--n", bench.n, "element count");
  bench_cmd->add_option("--m", bench.m, "operation count");
  bench_cmd->add_option("--variant", bench.variants, "variants to time, or all");
  bench_cmd->add_option("--repeats", bench.repeats, "repetitions; the median is reported");
  auto* bench_seed_opt = bench_cmd->add_option("--seed", bench_seed, "RNG seed");
  bench_cmd->add_option("--find-fraction", bench.find_fraction, "probability that an op is a find");
  bench_cmd->add_option("--workload", bench.workload, "random or binomial");
  bench_cmd->add_option("--k", bench.k, "binomial tree has 2^k nodes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  if (run_cmd->parsed()) return cmd_run(run, std::cout, std::cerr);
  if (gen_cmd->parsed()) {
    if (seed_opt->count()) gen.seed = gen_seed;
    return cmd_gen(gen, std::cout, std::cerr);
  }
  if (bounds_cmd->parsed()) return cmd_bounds(bound_ns, std::cout, std::cerr);
  if (lemmas_cmd->parsed()) {
    if (grid_seed_opt->count()) lemmas.grid_seed = grid_seed;
    return cmd_check_lemmas(lemmas, std::cout, std::cerr);
  }
  if (bench_cmd->parsed()) {
    if (bench_seed_opt->count()) bench.seed = bench_seed;
    return cmd_bench(bench, std::cout, std::cerr);
  }
  return 2;
}
