// Microbenchmarks for the kernels that dominate solve time: the fast
// transforms, the 2-D gradient, one full primal-dual step, and the
// peak-norm resolvent.

#include <benchmark/benchmark.h>

#include <complex>
#include <random>
#include <vector>

#include "pdhg/grad2d.hpp"
#include "pdhg/problems.hpp"
#include "pdhg/prox.hpp"
#include "pdhg/solver.hpp"
#include "pdhg/transforms.hpp"

using namespace pdhg;
using cd = std::complex<double>;

static void BM_fwht_4096(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::vector<double> v = gaussian_vector<double>(4096, rng);
  for (auto _ : state) {
    fwht(v);  // orthonormal involution, values stay bounded
    benchmark::DoNotOptimize(v.data());
  }
}
BENCHMARK(BM_fwht_4096);

static void BM_gradient_apply_64x64(benchmark::State& state) {
  GradientOperator2D grad(64, 64);
  std::mt19937_64 rng(2);
  std::vector<double> x = gaussian_vector<double>(grad.domain_dim(), rng);
  std::vector<double> out(grad.range_dim());
  for (auto _ : state) {
    grad.apply(x, out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_gradient_apply_64x64);

static void BM_gradient_adjoint_64x64(benchmark::State& state) {
  GradientOperator2D grad(64, 64);
  std::mt19937_64 rng(3);
  std::vector<double> y = gaussian_vector<double>(grad.range_dim(), rng);
  std::vector<double> out(grad.domain_dim());
  for (auto _ : state) {
    grad.apply_adjoint(y, out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_gradient_adjoint_64x64);

static void BM_dft_rows_apply_512x100(benchmark::State& state) {
  DftRowsOperator D(512, random_rows(512, 100, 5));
  std::mt19937_64 rng(4);
  std::vector<cd> x = gaussian_vector<cd>(512, rng);
  std::vector<cd> out(D.range_dim());
  for (auto _ : state) {
    D.apply(x, out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_dft_rows_apply_512x100);

static void BM_prox_linf_norm_4096(benchmark::State& state) {
  std::mt19937_64 rng(5);
  std::vector<double> v = gaussian_vector<double>(4096, rng);
  for (auto _ : state) {
    std::vector<double> p = prox_linf_norm<double>(v, 10.0);
    benchmark::DoNotOptimize(p.data());
  }
}
BENCHMARK(BM_prox_linf_norm_4096);

static void BM_pdhg_step_rof_64x64(benchmark::State& state) {
  Image img = make_noise(smooth_edges_image(64, 64, 7), NoiseKind::gaussian, 10.0, 8);
  SaddlePointProblem<double> prob = build_rof(img, 0.05);
  StepState st = init_stepsizes(*prob.rho_bound);
  const std::size_t n = prob.op->domain_dim();
  const std::size_t m = prob.op->range_dim();
  Iterate<double> cur{std::vector<double>(n, 0.0), std::vector<double>(m, 0.0)};
  std::vector<double> Ax_cur = apply_op<double>(*prob.op, cur.x);
  std::vector<double> ATy_cur = adjoint_op<double>(*prob.op, cur.y);
  Iterate<double> next;
  std::vector<double> Ax_next, ATy_next;
  for (auto _ : state) {
    pdhg_step(prob, cur, st, Ax_cur, ATy_cur, next, Ax_next, ATy_next);
    benchmark::DoNotOptimize(next.x.data());
    std::swap(cur, next);
    std::swap(Ax_cur, Ax_next);
    std::swap(ATy_cur, ATy_next);
  }
}
BENCHMARK(BM_pdhg_step_rof_64x64);

BENCHMARK_MAIN();
