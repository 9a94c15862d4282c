#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

namespace pdhg::cli {

enum class Problem { rof, tvl1, segment, cs, linf, lp };
enum class Variant { adapt, adapt_backtrack, const_sqrtl, const_taufinal };

const char* to_string(Problem p);
const char* to_string(Variant v);

// Flat bag of knobs shared by the solve and bench commands.  Sentinels
// (NaN mu, size 0, negative noise amount) mean "use the per-problem default";
// resolve_defaults replaces them in place.
struct RunConfig {
  Problem problem = Problem::rof;
  Variant policy = Variant::adapt;

  int size = 0;     // image side / signal length; 0 resolves per problem
  int rows = 100;   // measurement count for linf
  double mu = std::numeric_limits<double>::quiet_NaN();
  double epsilon = 0.1;  // linf constraint radius
  double rate = 0.1;     // cs sampling rate
  double c1 = 220.0, c2 = 40.0;
  std::string noise = "default";  // default | gaussian | salt_pepper | none
  double noise_amount = -1.0;

  std::string lp_file;  // empty: synthesize
  int lp_vars = 40, lp_ineq = 30, lp_eq = 20;
  std::string precondition = "printed";  // none | printed | inverse_sum

  double tol = 0.05;
  bool absolute_tol = false;
  int max_iters = 20000;
  double alpha0 = 0.5;
  double eta = 0.95;
  double delta = 1.5;
  double s = 0.0;  // residual balance scale; 0 resolves to the problem's own
  double gamma = 0.75;
  double beta = 0.95;
  std::uint64_t seed = 7;

  std::string out_dir = ".";
};

void resolve_defaults(RunConfig& cfg);

struct VariantResult {
  Variant variant = Variant::adapt;
  bool skipped = false;     // no usable spectral bound for this variant
  int status = 0;           // SolveStatus as int; see summary text for words
  int iterations = 0;
  int backtracks = 0;
  double seconds = 0.0;
  double final_p = 0.0, final_d = 0.0;  // raw l1 norms, as in the trace
  double objective = 0.0;
  // Stepsizes in effect when the run ended; for const_taufinal these repeat
  // the adapt row's values bitwise.
  double tau_last = 0.0, sigma_last = 0.0;
};

struct BenchmarkReport {
  std::vector<VariantResult> variants;
};

// Solves one problem/policy pair, writes trace.csv plus a solution artifact
// into cfg.out_dir, and prints a summary line.  Returns the process exit
// code: 0 converged, 3 stopped at max_iters, 4 diverged.
int run_solve(RunConfig cfg, std::ostream& out, std::ostream& err);

// Runs all four stepsize variants on one problem instance (adaptive first,
// whose final stepsizes seed const_taufinal), prints an aligned table and
// writes bench.csv.  Returns 0 unless the problem cannot be built.
int run_bench(RunConfig cfg, std::ostream& out, std::ostream& err,
              BenchmarkReport* report_out = nullptr);

}  // namespace pdhg::cli
