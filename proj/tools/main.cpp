#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "runner.hpp"

int main(int argc, char** argv) {
  using pdhg::cli::Problem;
  using pdhg::cli::RunConfig;
  using pdhg::cli::Variant;

  CLI::App app{"primal-dual splitting for saddle-point problems"};
  app.require_subcommand(1);
  // Options live on the root so that one --config file serves both
  // subcommands; fallthrough lets "pdhg solve --mu 0.1" reach them.
  app.fallthrough();

  RunConfig cfg;
  std::map<std::string, Problem> problems{
      {"rof", Problem::rof},   {"tvl1", Problem::tvl1}, {"segment", Problem::segment},
      {"cs", Problem::cs},     {"linf", Problem::linf}, {"lp", Problem::lp}};
  std::map<std::string, Variant> variants{
      {"adapt", Variant::adapt},
      {"adapt_backtrack", Variant::adapt_backtrack},
      {"const_sqrtL", Variant::const_sqrtl},
      {"const_taufinal", Variant::const_taufinal}};

  app.add_option("--problem", cfg.problem, "problem family to build")
      ->required()
      ->transform(CLI::CheckedTransformer(problems, CLI::ignore_case));
  app.add_option("--policy", cfg.policy, "stepsize policy (solve only)")
      ->transform(CLI::CheckedTransformer(variants));
  app.add_option("--size", cfg.size,
                 "image side / signal length (0: per-problem default)");
  app.add_option("--rows", cfg.rows, "measurement row count (linf)");
  app.add_option("--mu", cfg.mu, "data weight (default depends on the problem)");
  app.add_option("--epsilon", cfg.epsilon, "constraint radius (linf)");
  app.add_option("--rate", cfg.rate, "sampling rate in [0, 1] (cs)");
  app.add_option("--c1", cfg.c1, "foreground level (segment)");
  app.add_option("--c2", cfg.c2, "background level (segment)");
  app.add_option("--noise", cfg.noise, "default | gaussian | salt_pepper | none")
      ->check(CLI::IsMember({"default", "gaussian", "salt_pepper", "none"}));
  app.add_option("--noise-amount,--noise_amount", cfg.noise_amount,
                 "stddev or corrupted fraction (negative: default)");
  app.add_option("--lp-file,--lp_file", cfg.lp_file,
                 "LP instance file (empty: synthesize)");
  app.add_option("--lp-vars,--lp_vars", cfg.lp_vars, "synthetic LP variables");
  app.add_option("--lp-ineq,--lp_ineq", cfg.lp_ineq, "synthetic LP inequalities");
  app.add_option("--lp-eq,--lp_eq", cfg.lp_eq, "synthetic LP equalities");
  app.add_option("--precondition", cfg.precondition,
                 "LP diagonal scaling: none | printed | inverse_sum")
      ->check(CLI::IsMember({"none", "printed", "inverse_sum"}));
  app.add_option("--tol", cfg.tol, "residual tolerance");
  app.add_flag("--absolute-tol,--absolute_tol", cfg.absolute_tol,
               "compare raw l1 residual norms instead of per-element means");
  app.add_option("--max-iters,--max_iters", cfg.max_iters, "iteration cap");
  app.add_option("--alpha0", cfg.alpha0, "initial balancing intensity");
  app.add_option("--eta", cfg.eta, "balancing decay factor");
  app.add_option("--delta", cfg.delta, "balancing trigger band");
  app.add_option("--s", cfg.s, "residual balance scale (0: problem default)");
  app.add_option("--gamma", cfg.gamma, "backtracking safety margin");
  app.add_option("--beta", cfg.beta, "backtracking shrink factor");
  app.add_option("--seed", cfg.seed, "seed for data, probes and noise");
  app.add_option("--out-dir,--out_dir", cfg.out_dir, "artifact directory");

  app.set_config("--config", "", "read options from a key = value file");
  app.allow_config_extras(CLI::config_extras_mode::error);

  CLI::App* solve = app.add_subcommand(
      "solve", "run one problem/policy pair and write its artifacts");
  CLI::App* bench = app.add_subcommand(
      "bench", "compare all four stepsize policies on one problem");
  (void)bench;

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed())
      return pdhg::cli::run_solve(cfg, std::cout, std::cerr);
    return pdhg::cli::run_bench(cfg, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
