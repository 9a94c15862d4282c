#include "runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <stdexcept>

#include "pdhg/pgm.hpp"
#include "pdhg/problems.hpp"
#include "pdhg/trace_csv.hpp"

namespace pdhg::cli {

namespace fs = std::filesystem;
using cd = std::complex<double>;

const char* to_string(Problem p) {
  switch (p) {
    case Problem::rof: return "rof";
    case Problem::tvl1: return "tvl1";
    case Problem::segment: return "segment";
    case Problem::cs: return "cs";
    case Problem::linf: return "linf";
    case Problem::lp: return "lp";
  }
  return "?";
}

const char* to_string(Variant v) {
  switch (v) {
    case Variant::adapt: return "adapt";
    case Variant::adapt_backtrack: return "adapt_backtrack";
    case Variant::const_sqrtl: return "const_sqrtL";
    case Variant::const_taufinal: return "const_taufinal";
  }
  return "?";
}

void resolve_defaults(RunConfig& cfg) {
  if (cfg.size == 0) cfg.size = cfg.problem == Problem::linf ? 512 : 64;
  if (std::isnan(cfg.mu)) {
    switch (cfg.problem) {
      case Problem::rof: cfg.mu = 0.05; break;
      case Problem::tvl1: cfg.mu = 1.0; break;
      case Problem::segment: cfg.mu = 0.5; break;
      default: cfg.mu = 1.0; break;
    }
  }
  if (cfg.noise == "default") {
    switch (cfg.problem) {
      case Problem::rof: cfg.noise = "gaussian"; break;
      case Problem::tvl1: cfg.noise = "salt_pepper"; break;
      default: cfg.noise = "none"; break;
    }
  }
  if (cfg.noise_amount < 0.0)
    cfg.noise_amount = cfg.noise == "salt_pepper" ? 0.1 : 10.0;
}

namespace {

SolveOptions make_options(const RunConfig& cfg) {
  SolveOptions opt;
  opt.tol = cfg.tol;
  opt.absolute_tolerance = cfg.absolute_tol;
  opt.max_iters = cfg.max_iters;
  opt.alpha0 = cfg.alpha0;
  opt.eta = cfg.eta;
  opt.delta = cfg.delta;
  opt.gamma = cfg.gamma;
  opt.beta = cfg.beta;
  if (cfg.s > 0.0) opt.residual_scale = cfg.s;
  opt.seed = cfg.seed;
  return opt;
}

Image make_input_image(const RunConfig& cfg) {
  Image base = cfg.problem == Problem::segment
                   ? phantom_circles(cfg.size, cfg.size, cfg.seed)
                   : smooth_edges_image(cfg.size, cfg.size, cfg.seed);
  if (cfg.noise == "none") return base;
  NoiseKind kind =
      cfg.noise == "gaussian" ? NoiseKind::gaussian : NoiseKind::salt_pepper;
  return make_noise(base, kind, cfg.noise_amount, cfg.seed + 1);
}

double now_seconds() {
  using namespace std::chrono;
  return duration<double>(steady_clock::now().time_since_epoch()).count();
}

template <typename T>
struct Driven {
  SolveResult<T> result;
  bool skipped = false;
  double seconds = 0.0;
};

// Maps a CLI variant onto an engine policy; const_taufinal first runs the
// adaptive controller to completion and freezes its last stepsizes.
template <typename T>
Driven<T> drive(const SaddlePointProblem<T>& prob, Variant v,
                const SolveOptions& opt) {
  Driven<T> out;
  StepPolicy policy = StepPolicy::adaptive();
  switch (v) {
    case Variant::adapt:
      if (!prob.rho_bound) { out.skipped = true; return out; }
      policy = StepPolicy::adaptive();
      break;
    case Variant::adapt_backtrack:
      policy = StepPolicy::adaptive_backtracking();
      break;
    case Variant::const_sqrtl: {
      if (!prob.rho_bound) { out.skipped = true; return out; }
      // sqrt of the stability product L the adaptive run pins, i.e. the
      // adaptive initialization held constant.
      double t = 0.95 / std::sqrt(*prob.rho_bound);
      policy = StepPolicy::constant(t, t);
      break;
    }
    case Variant::const_taufinal: {
      if (!prob.rho_bound) { out.skipped = true; return out; }
      auto harvest = solve(prob, StepPolicy::adaptive(), opt);
      policy = StepPolicy::constant(harvest.final_state.tau,
                                    harvest.final_state.sigma);
      break;
    }
  }
  double t0 = now_seconds();
  out.result = solve(prob, policy, opt);
  out.seconds = now_seconds() - t0;
  return out;
}

// Solving (unlike benching) cannot mark a variant as skipped; surface the
// missing bound as an error instead.
template <typename T>
void require_ran(const Driven<T>& d) {
  if (d.skipped)
    throw std::runtime_error(
        "this stepsize policy needs an operator norm bound the problem does not carry");
}

std::string summary_line(const SolverTrace& trace) {
  char buf[128];
  switch (trace.status) {
    case SolveStatus::converged:
      std::snprintf(buf, sizeof buf, "converged in %d iterations",
                    trace.iterations);
      break;
    case SolveStatus::max_iters:
      std::snprintf(buf, sizeof buf,
                    "stopped at the iteration cap (%d iterations)",
                    trace.iterations);
      break;
    case SolveStatus::diverged:
      std::snprintf(buf, sizeof buf, "diverged at iteration %d",
                    trace.diverged_iter);
      break;
  }
  return buf;
}

int exit_code(const SolverTrace& trace) {
  switch (trace.status) {
    case SolveStatus::converged: return 0;
    case SolveStatus::max_iters: return 3;
    case SolveStatus::diverged: return 4;
  }
  return 4;
}

void print_residual_tail(const SolverTrace& trace, std::ostream& out) {
  for (auto it = trace.records.rbegin(); it != trace.records.rend(); ++it) {
    if (it->backtracked) continue;
    if (it->p && it->d)
      out << "final residuals: p/N = " << *it->p / (double)trace.domain_dim
          << ", d/M = " << *it->d / (double)trace.range_dim << "\n";
    return;
  }
}

void write_solution_txt(const std::string& path, const std::vector<double>& x) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  char buf[64];
  for (double v : x) {
    std::snprintf(buf, sizeof buf, "%.17g\n", v);
    f << buf;
  }
}

void write_solution_txt(const std::string& path, const std::vector<cd>& x) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  char buf[96];
  for (cd v : x) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", v.real(), v.imag());
    f << buf;
  }
}

}  // namespace

int run_solve(RunConfig cfg, std::ostream& out, std::ostream& err) {
  resolve_defaults(cfg);
  fs::create_directories(cfg.out_dir);
  const std::string dir = cfg.out_dir + "/";
  SolveOptions opt = make_options(cfg);

  try {
    switch (cfg.problem) {
      case Problem::rof:
      case Problem::tvl1:
      case Problem::segment: {
        Image input = make_input_image(cfg);
        SaddlePointProblem<double> prob =
            cfg.problem == Problem::rof ? build_rof(input, cfg.mu)
            : cfg.problem == Problem::tvl1
                ? build_tvl1(input, cfg.mu)
                : build_segmentation(input, cfg.c1, cfg.c2, cfg.mu);
        auto d = drive(prob, cfg.policy, opt);
        require_ran(d);
        write_trace_csv(d.result.trace, dir + "trace.csv");
        write_pgm(input, dir + "input.pgm");
        Image sol = input;
        sol.px = d.result.iterate.x;
        if (cfg.problem == Problem::segment) { sol.lo = 0.0; sol.hi = 1.0; }
        write_pgm(sol, dir + "solution.pgm");
        out << to_string(cfg.problem) << " " << to_string(cfg.policy) << ": "
            << summary_line(d.result.trace) << "\n";
        print_residual_tail(d.result.trace, out);
        if (prob.objective)
          out << "objective: " << prob.objective(d.result.iterate.x) << "\n";
        return exit_code(d.result.trace);
      }
      case Problem::cs: {
        auto setup =
            build_compressed_sensing(cfg.size, cfg.size, cfg.rate, cfg.mu, cfg.seed);
        auto d = drive(setup.problem, cfg.policy, opt);
        require_ran(d);
        write_trace_csv(d.result.trace, dir + "trace.csv");
        write_pgm(setup.ground_truth, dir + "truth.pgm");
        Image sol = setup.ground_truth;
        sol.px = d.result.iterate.x;
        write_pgm(sol, dir + "solution.pgm");
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < sol.px.size(); ++i) {
          double e = sol.px[i] - setup.ground_truth.px[i];
          num += e * e;
          den += setup.ground_truth.px[i] * setup.ground_truth.px[i];
        }
        out << "cs " << to_string(cfg.policy) << ": "
            << summary_line(d.result.trace) << "\n";
        print_residual_tail(d.result.trace, out);
        out << "relative reconstruction error: "
            << (den > 0 ? std::sqrt(num / den) : 0.0) << "\n";
        return exit_code(d.result.trace);
      }
      case Problem::linf: {
        if (cfg.rows <= 0 || cfg.rows > cfg.size)
          throw std::invalid_argument("rows must lie in [1, size]");
        auto D = std::make_shared<DftRowsOperator>(
            cfg.size, random_rows(cfg.size, cfg.rows, cfg.seed));
        std::mt19937_64 rng(cfg.seed + 1);
        std::vector<cd> signal = gaussian_vector<cd>(cfg.size, rng);
        std::vector<cd> z = apply_op<cd>(*D, signal);
        auto prob = build_linf_approx(D, z, cfg.epsilon);
        auto d = drive(prob, cfg.policy, opt);
        require_ran(d);
        write_trace_csv(d.result.trace, dir + "trace.csv");
        std::vector<cd> x1(d.result.iterate.x.begin(),
                           d.result.iterate.x.begin() + cfg.size);
        write_solution_txt(dir + "solution.txt", x1);
        std::vector<cd> fit = apply_op<cd>(*D, x1);
        double feas = 0.0, mx = 0.0;
        for (std::size_t i = 0; i < z.size(); ++i) feas += std::norm(fit[i] - z[i]);
        for (const cd& v : x1) mx = std::max(mx, std::abs(v));
        out << "linf " << to_string(cfg.policy) << ": "
            << summary_line(d.result.trace) << "\n";
        print_residual_tail(d.result.trace, out);
        out << "max magnitude: " << mx
            << ", constraint norm: " << std::sqrt(feas)
            << " (epsilon " << cfg.epsilon << ")\n";
        return exit_code(d.result.trace);
      }
      case Problem::lp: {
        LpInstance inst =
            cfg.lp_file.empty()
                ? make_synthetic_lp(cfg.lp_vars, cfg.lp_ineq, cfg.lp_eq, cfg.seed)
                : load_lp(cfg.lp_file);
        LpPreconditioner pre = cfg.precondition == "none"
                                   ? LpPreconditioner::none
                               : cfg.precondition == "inverse_sum"
                                   ? LpPreconditioner::inverse_sum
                                   : LpPreconditioner::printed;
        LpSaddle saddle = build_lp(inst, pre);
        auto d = drive(saddle.problem, cfg.policy, opt);
        require_ran(d);
        write_trace_csv(d.result.trace, dir + "trace.csv");
        std::vector<double> x = saddle.recover_x(d.result.iterate.x);
        write_solution_txt(dir + "solution.txt", x);
        double obj = 0.0;
        for (std::size_t j = 0; j < inst.n; ++j) obj += inst.c[j] * x[j];
        double viol = 0.0;
        for (std::size_t i = 0; i < inst.m; ++i) {
          double ax = 0.0;
          for (std::size_t j = 0; j < inst.n; ++j) ax += inst.A[i * inst.n + j] * x[j];
          viol = std::max(viol, ax - inst.b[i]);
        }
        out << "lp " << to_string(cfg.policy) << ": "
            << summary_line(d.result.trace) << "\n";
        print_residual_tail(d.result.trace, out);
        out << "objective c'x: " << obj << ", worst constraint excess: " << viol
            << "\n";
        return exit_code(d.result.trace);
      }
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

namespace {

template <typename T>
void bench_over(const SaddlePointProblem<T>& prob, const SolveOptions& opt,
                BenchmarkReport& report) {
  // Harvested stepsizes make const_taufinal meaningful; drive() reruns the
  // adaptive solve internally for that variant, keeping every row
  // independent of the others.
  for (Variant v : {Variant::adapt, Variant::adapt_backtrack,
                    Variant::const_sqrtl, Variant::const_taufinal}) {
    auto d = drive(prob, v, opt);
    VariantResult r;
    r.variant = v;
    if (d.skipped) {
      r.skipped = true;
    } else {
      const SolverTrace& t = d.result.trace;
      r.status = (int)t.status;
      r.iterations = t.iterations;
      r.backtracks = t.backtracks;
      r.seconds = d.seconds;
      for (auto it = t.records.rbegin(); it != t.records.rend(); ++it)
        if (!it->backtracked && it->p) {
          r.final_p = *it->p;
          r.final_d = *it->d;
          break;
        }
      if (prob.objective) r.objective = prob.objective(d.result.iterate.x);
      r.tau_last = d.result.final_state.tau;
      r.sigma_last = d.result.final_state.sigma;
    }
    report.variants.push_back(r);
  }
}

const char* status_word(const VariantResult& r) {
  if (r.skipped) return "skipped";
  switch ((SolveStatus)r.status) {
    case SolveStatus::converged: return "converged";
    case SolveStatus::max_iters: return "max_iters";
    case SolveStatus::diverged: return "diverged";
  }
  return "?";
}

}  // namespace

int run_bench(RunConfig cfg, std::ostream& out, std::ostream& err,
              BenchmarkReport* report_out) {
  resolve_defaults(cfg);
  fs::create_directories(cfg.out_dir);
  SolveOptions opt = make_options(cfg);
  BenchmarkReport report;

  try {
    switch (cfg.problem) {
      case Problem::rof:
      case Problem::tvl1:
      case Problem::segment: {
        Image input = make_input_image(cfg);
        SaddlePointProblem<double> prob =
            cfg.problem == Problem::rof ? build_rof(input, cfg.mu)
            : cfg.problem == Problem::tvl1
                ? build_tvl1(input, cfg.mu)
                : build_segmentation(input, cfg.c1, cfg.c2, cfg.mu);
        bench_over(prob, opt, report);
        break;
      }
      case Problem::cs: {
        auto setup =
            build_compressed_sensing(cfg.size, cfg.size, cfg.rate, cfg.mu, cfg.seed);
        bench_over(setup.problem, opt, report);
        break;
      }
      case Problem::linf: {
        if (cfg.rows <= 0 || cfg.rows > cfg.size)
          throw std::invalid_argument("rows must lie in [1, size]");
        auto D = std::make_shared<DftRowsOperator>(
            cfg.size, random_rows(cfg.size, cfg.rows, cfg.seed));
        std::mt19937_64 rng(cfg.seed + 1);
        std::vector<cd> signal = gaussian_vector<cd>(cfg.size, rng);
        auto prob = build_linf_approx(D, apply_op<cd>(*D, signal), cfg.epsilon);
        bench_over(prob, opt, report);
        break;
      }
      case Problem::lp: {
        LpInstance inst =
            cfg.lp_file.empty()
                ? make_synthetic_lp(cfg.lp_vars, cfg.lp_ineq, cfg.lp_eq, cfg.seed)
                : load_lp(cfg.lp_file);
        LpPreconditioner pre = cfg.precondition == "none"
                                   ? LpPreconditioner::none
                               : cfg.precondition == "inverse_sum"
                                   ? LpPreconditioner::inverse_sum
                                   : LpPreconditioner::printed;
        LpSaddle saddle = build_lp(inst, pre);
        bench_over(saddle.problem, opt, report);
        break;
      }
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  char line[256];
  out << "problem: " << to_string(cfg.problem) << " (seed " << cfg.seed
      << ", tol " << cfg.tol << ")\n";
  std::snprintf(line, sizeof line, "%-16s %-10s %10s %10s %9s %12s %12s %14s\n",
                "variant", "status", "iters", "backtracks", "seconds", "final_p",
                "final_d", "objective");
  out << line;
  for (const VariantResult& r : report.variants) {
    if (r.skipped) {
      std::snprintf(line, sizeof line, "%-16s %-10s\n", to_string(r.variant),
                    "skipped");
    } else {
      std::snprintf(line, sizeof line,
                    "%-16s %-10s %10d %10d %9.3f %12.5g %12.5g %14.8g\n",
                    to_string(r.variant), status_word(r), r.iterations,
                    r.backtracks, r.seconds, r.final_p, r.final_d, r.objective);
    }
    out << line;
  }

  std::ofstream csv(cfg.out_dir + "/bench.csv", std::ios::binary);
  csv << "variant,status,iterations,backtracks,seconds,final_p,final_d,"
         "objective,tau_last,sigma_last\n";
  for (const VariantResult& r : report.variants) {
    if (r.skipped) {
      csv << to_string(r.variant) << ",skipped,,,,,,,,\n";
      continue;
    }
    std::snprintf(line, sizeof line,
                  "%s,%s,%d,%d,%.6f,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  to_string(r.variant), status_word(r), r.iterations,
                  r.backtracks, r.seconds, r.final_p, r.final_d, r.objective,
                  r.tau_last, r.sigma_last);
    csv << line;
  }

  if (report_out) *report_out = std::move(report);
  return 0;
}

}  // namespace pdhg::cli
