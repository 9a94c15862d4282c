#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "pdhg/prox.hpp"
#include "pdhg/transforms.hpp"
#include "pdhg/vec.hpp"

using namespace pdhg;
using cd = std::complex<double>;

namespace {

template <typename T>
using VecFn = std::function<std::vector<T>(const std::vector<T>&)>;

template <typename T>
void check_nonexpansive(const VecFn<T>& fn, std::size_t n, std::uint64_t seed,
                        int pairs = 1000) {
  std::mt19937_64 rng(seed);
  for (int k = 0; k < pairs; ++k) {
    std::vector<T> a = gaussian_vector<T>(n, rng);
    std::vector<T> b = gaussian_vector<T>(n, rng);
    std::vector<T> fa = fn(a), fb = fn(b);
    double lhs = 0, rhs = 0;
    for (std::size_t i = 0; i < n; ++i) {
      lhs += std::norm(fa[i] - fb[i]);
      rhs += std::norm(a[i] - b[i]);
    }
    CHECK(lhs <= rhs * (1.0 + 1e-12));
  }
}

template <typename T>
void check_idempotent(const VecFn<T>& proj, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (int k = 0; k < 20; ++k) {
    std::vector<T> v = gaussian_vector<T>(n, rng);
    for (T& z : v) z *= 3.0;
    std::vector<T> once = proj(v);
    std::vector<T> twice = proj(once);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(twice[i] - once[i]) <= 1e-12);
  }
}

// Optimality by perturbation: the returned point must not lose to any nearby
// feasible candidate.  `feasible` maps a perturbed point back into the
// constraint set (identity for unconstrained objectives).
template <typename T>
void check_perturbation_optimal(const VecFn<T>& op, const VecFn<T>& feasible,
                                const std::function<double(const std::vector<T>&)>& obj,
                                const std::vector<T>& v, std::uint64_t seed) {
  std::vector<T> star = op(v);
  double base = obj(star);
  std::mt19937_64 rng(seed);
  for (int k = 0; k < 100; ++k) {
    std::vector<T> d = gaussian_vector<T>(v.size(), rng);
    std::vector<T> cand(star);
    for (std::size_t i = 0; i < v.size(); ++i) cand[i] = star[i] + 1e-4 * d[i];
    cand = feasible(cand);
    CHECK(base <= obj(cand) + 1e-6);
  }
}

template <typename T>
double dist_sq(const std::vector<T>& a, const std::vector<T>& b) {
  double acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::norm(a[i] - b[i]);
  return acc;
}

}  // namespace

TEST_SUITE("prox") {

TEST_CASE("prox_quadratic: closed form and golden-section oracle") {
  CHECK(prox_quadratic({2.0}, 1.0, {0.0}, 1.0)[0] == doctest::Approx(1.0));

  std::mt19937_64 rng(1);
  std::vector<double> v = gaussian_vector<double>(6, rng);
  std::vector<double> f = gaussian_vector<double>(6, rng);
  std::vector<double> same = prox_quadratic(v, 0.7, f, 0.0);
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(same[i] == v[i]);

  const double t = 0.5, mu = 0.25, fs = 10.0, vs = 8.0;
  double got = prox_quadratic({vs}, t, {fs}, mu)[0];
  double ref = oracle::golden_section_min(
      [&](double x) {
        return 0.5 * mu * (x - fs) * (x - fs) + (x - vs) * (x - vs) / (2.0 * t);
      },
      0.0, 20.0);
  CHECK(std::abs(got - ref) <= 1e-8);

  CHECK_THROWS_AS(prox_quadratic({1.0}, 0.0, {0.0}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(prox_quadratic({1.0}, 1.0, {0.0}, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(prox_quadratic({1.0, 2.0}, 1.0, {0.0}, 1.0), std::invalid_argument);
}

TEST_CASE("project_disc_field: per-pixel magnitudes") {
  std::vector<double> keep = project_disc_field({0.3, 0.4});
  CHECK(keep[0] == 0.3);
  CHECK(keep[1] == 0.4);

  std::vector<double> shrunk = project_disc_field({3.0, 4.0});
  CHECK(shrunk[0] == doctest::Approx(0.6));
  CHECK(shrunk[1] == doctest::Approx(0.8));

  CHECK_THROWS_AS(project_disc_field({1.0, 2.0, 3.0}), std::invalid_argument);

  // every output pair has radius <= 1
  std::mt19937_64 rng(2);
  std::vector<double> y = gaussian_vector<double>(40, rng);
  for (double& v : y) v *= 4.0;
  std::vector<double> p = project_disc_field(y);
  for (std::size_t i = 0; i < 20; ++i) CHECK(std::hypot(p[i], p[20 + i]) <= 1.0 + 1e-12);
}

TEST_CASE("project_box: clamp examples") {
  std::vector<double> out = project_box({-1.0, 0.5, 2.0}, 0.0, 1.0);
  CHECK(out == std::vector<double>{0.0, 0.5, 1.0});

  std::vector<double> fixed = project_box({0.25, 0.75}, 0.0, 1.0);
  CHECK(fixed == std::vector<double>{0.25, 0.75});

  std::vector<double> degenerate = project_box({-3.0, 5.0}, 0.0, 0.0);
  CHECK(degenerate == std::vector<double>{0.0, 0.0});

  CHECK_THROWS_AS(project_box({1.0}, 2.0, 1.0), std::invalid_argument);
}

TEST_CASE("project_linf_box: clamp, degenerate, coordinatewise oracle") {
  std::vector<double> in1{3.0, -0.5};
  std::vector<double> out = project_linf_box(in1, 1.0);
  CHECK(out == std::vector<double>{1.0, -0.5});

  std::vector<double> in2{0.7, -2.0};
  std::vector<double> zero = project_linf_box(in2, 0.0);
  CHECK(zero == std::vector<double>{0.0, 0.0});

  const double mu = 1.3;
  std::mt19937_64 rng(3);
  std::vector<double> v = gaussian_vector<double>(12, rng);
  for (double& z : v) z *= 3.0;
  std::vector<double> p = project_linf_box(v, mu);
  for (std::size_t i = 0; i < v.size(); ++i) {
    double ref = oracle::golden_section_min(
        [&](double x) { return (x - v[i]) * (x - v[i]); }, -mu, mu);
    CHECK(std::abs(p[i] - ref) <= 1e-9);
  }

  // complex branch scales magnitude, preserving phase
  std::vector<cd> vc = gaussian_vector<cd>(10, rng);
  for (cd& z : vc) z *= 3.0;
  std::vector<cd> pc = project_linf_box(vc, mu);
  for (std::size_t i = 0; i < vc.size(); ++i) {
    CHECK(std::abs(pc[i]) <= mu + 1e-12);
    double r = std::abs(vc[i]);
    if (r > 0) {
      double sref = oracle::golden_section_min(
          [&](double s) { return std::norm(vc[i] * (s / r) - vc[i]); }, 0.0, mu);
      CHECK(std::abs(std::abs(pc[i]) - std::min(sref, r)) <= 1e-9);
      // phase preserved: pc is a nonnegative multiple of vc
      cd ratio = pc[i] / vc[i];
      CHECK(std::abs(ratio.imag()) <= 1e-12);
      CHECK(ratio.real() >= -1e-12);
    }
  }
}

TEST_CASE("project_l2_ball: interior, radial, degenerate, complex") {
  std::vector<double> in = project_l2_ball<double>({0.5, 0.0}, {0.0, 0.0}, 1.0);
  CHECK(in == std::vector<double>{0.5, 0.0});

  std::vector<double> onto = project_l2_ball<double>({0.0, 2.0}, {0.0, 0.0}, 1.0);
  CHECK(onto[0] == doctest::Approx(0.0));
  CHECK(onto[1] == doctest::Approx(1.0));

  std::vector<double> center = project_l2_ball<double>({9.0, -4.0}, {1.0, 1.0}, 0.0);
  CHECK(center[0] == doctest::Approx(1.0));
  CHECK(center[1] == doctest::Approx(1.0));

  std::vector<cd> zc =
      project_l2_ball<cd>({cd(3, 4), cd(0, 0)}, {cd(0, 0), cd(0, 0)}, 1.0);
  CHECK(std::abs(l2_norm<cd>(zc) - 1.0) <= 1e-12);

  CHECK_THROWS_AS(project_l2_ball<double>({1.0}, {0.0}, -1.0), std::invalid_argument);
}

TEST_CASE("prox_linf_norm: small-input zero, 2-D value, grid oracle") {
  // ||v||_1 <= t collapses to zero via the Moreau identity
  std::vector<double> z = prox_linf_norm<double>({0.3, -0.2, 0.1}, 1.0);
  for (double v : z) CHECK(v == 0.0);

  std::vector<double> two = prox_linf_norm<double>({3.0, 1.0}, 1.0);
  CHECK(two[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(two[1] == doctest::Approx(1.0).epsilon(1e-12));
  std::vector<double> grid = oracle::threshold_grid_prox_linf<double>({3.0, 1.0}, 1.0);
  CHECK(std::abs(two[0] - grid[0]) <= 1e-6);
  CHECK(std::abs(two[1] - grid[1]) <= 1e-6);

  std::vector<double> v2{1.7, -0.4};
  std::vector<double> got2 = prox_linf_norm(v2, 0.8);
  std::vector<double> grid2 = oracle::threshold_grid_prox_linf(v2, 0.8);
  CHECK(std::abs(got2[0] - grid2[0]) <= 1e-6);
  CHECK(std::abs(got2[1] - grid2[1]) <= 1e-6);

  CHECK_THROWS_AS(prox_linf_norm<double>({1.0}, 0.0), std::invalid_argument);
}

TEST_CASE("prox_linf_norm: subgradient oracle, objective no-increase") {
  std::mt19937_64 rng(14);
  std::vector<double> v5 = gaussian_vector<double>(5, rng);
  std::vector<double> got = prox_linf_norm(v5, 0.7);
  std::vector<double> sub = oracle::subgradient_prox_linf(v5, 0.7);
  for (int i = 0; i < 5; ++i) CHECK(std::abs(got[i] - sub[i]) <= 1e-4);
  CHECK(oracle::linf_prox_objective(got, v5, 0.7) <=
        oracle::linf_prox_objective(sub, v5, 0.7) + 1e-6);

  std::mt19937_64 rng2(15);
  std::vector<cd> vc = gaussian_vector<cd>(4, rng2);
  std::vector<cd> gotc = prox_linf_norm(vc, 0.5);
  std::vector<cd> subc = oracle::subgradient_prox_linf(vc, 0.5);
  for (int i = 0; i < 4; ++i) CHECK(std::abs(gotc[i] - subc[i]) <= 1e-4);

  // objective never increases relative to the input point, and the output
  // max-magnitude never exceeds the input's
  for (std::uint64_t seed = 30; seed < 40; ++seed) {
    std::mt19937_64 r(seed);
    std::vector<double> v = gaussian_vector<double>(9, r);
    std::vector<double> x = prox_linf_norm(v, 0.6);
    CHECK(oracle::linf_prox_objective(x, v, 0.6) <=
          oracle::linf_prox_objective(v, v, 0.6) + 1e-12);
    CHECK(linf_norm<double>(x) <= linf_norm<double>(v) + 1e-12);
  }
}

TEST_CASE("prox_linear_nonneg: shift then clamp") {
  std::vector<double> out = prox_linear_nonneg({2.0, 2.0}, 1.0, {1.0, 3.0});
  CHECK(out == std::vector<double>{1.0, 0.0});

  std::vector<double> clamp = prox_linear_nonneg({1.5, -0.5}, 1.0, {0.0, 0.0});
  CHECK(clamp == std::vector<double>{1.5, 0.0});

  std::vector<double> neg = prox_linear_nonneg({-3.0, -0.1}, 1.0, {0.0, 0.0});
  CHECK(neg == std::vector<double>{0.0, 0.0});

  CHECK_THROWS_AS(prox_linear_nonneg({1.0}, -1.0, {0.0}), std::invalid_argument);
  CHECK_THROWS_AS(prox_linear_nonneg({1.0}, 1.0, {0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("prox_subsampled_quadratic: mask extremes and dense-solve oracle") {
  const std::size_t n = 8;
  std::mt19937_64 rng(7);
  std::vector<double> v = gaussian_vector<double>(n, rng);
  std::vector<double> b = gaussian_vector<double>(n, rng);
  const double t = 0.4, mu = 1.7;

  // full mask: equals prox_quadratic pulled back through the transform,
  // i.e. the minimizer with f = H^T b
  SubsampledHadamardOperator full(n, std::vector<std::uint8_t>(n, 1));
  std::vector<double> hb(b);
  fwht(hb);  // orthonormal involution: H^T b
  std::vector<double> viaop = prox_subsampled_quadratic(v, t, full, b, mu);
  std::vector<double> direct = prox_quadratic(v, t, hb, mu);
  for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(viaop[i] - direct[i]) <= 1e-12);

  // empty mask: data term vanishes
  SubsampledHadamardOperator none(n, std::vector<std::uint8_t>(n, 0));
  std::vector<double> same = prox_subsampled_quadratic(v, t, none, b, mu);
  for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(same[i] - v[i]) <= 1e-12);

  // random mask: normal equations (mu H^T R H + I/t) x = mu H^T R b + v/t
  SubsampledHadamardOperator op(n, random_mask(n, 3, 4));
  std::vector<double> got = prox_subsampled_quadratic(v, t, op, b, mu);
  auto H = oracle::hadamard_matrix(n);
  const auto& mask = op.mask();
  std::vector<double> sys(n * n, 0.0), rhs(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double acc = 0;
      for (std::size_t k = 0; k < n; ++k)
        if (mask[k]) acc += H[k * n + i] * H[k * n + j];
      sys[i * n + j] = mu * acc + (i == j ? 1.0 / t : 0.0);
    }
    double acc = 0;
    for (std::size_t k = 0; k < n; ++k)
      if (mask[k]) acc += H[k * n + i] * b[k];
    rhs[i] = mu * acc + v[i] / t;
  }
  std::vector<double> ref = oracle::gauss_solve(sys, rhs);
  for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(got[i] - ref[i]) <= 1e-8);
}

TEST_CASE("projections are idempotent") {
  check_idempotent<double>([](const std::vector<double>& v) {
    return project_disc_field(v);
  }, 16, 40);
  check_idempotent<double>([](const std::vector<double>& v) {
    return project_box(v, 0.0, 1.0);
  }, 9, 41);
  check_idempotent<double>([](const std::vector<double>& v) {
    return project_linf_box(v, 0.8);
  }, 9, 42);
  check_idempotent<cd>([](const std::vector<cd>& v) {
    return project_linf_box(v, 0.8);
  }, 9, 43);
  check_idempotent<double>([](const std::vector<double>& v) {
    std::vector<double> c(v.size(), 0.25);
    return project_l2_ball(v, c, 1.5);
  }, 9, 44);
}

TEST_CASE("perturbation optimality of every resolvent") {
  std::mt19937_64 setup(50);
  std::vector<double> f = gaussian_vector<double>(9, setup);
  std::vector<double> c = gaussian_vector<double>(9, setup);
  const double t = 0.6, mu = 1.2;

  auto run = [&](const VecFn<double>& op, const VecFn<double>& feasible,
                 const std::function<double(const std::vector<double>&, const std::vector<double>&)>& objf,
                 std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<double> v = gaussian_vector<double>(n, rng);
    for (double& z : v) z *= 2.0;
    check_perturbation_optimal<double>(
        op, feasible, [objf, v](const std::vector<double>& x) { return objf(x, v); },
        v, seed + 1000);
  };

  run([&](const std::vector<double>& v) { return prox_quadratic(v, t, f, mu); },
      [](const std::vector<double>& x) { return x; },
      [&](const std::vector<double>& x, const std::vector<double>& v) {
        return 0.5 * mu * dist_sq(x, f) + dist_sq(x, v) / (2 * t);
      },
      9, 51);

  run([](const std::vector<double>& v) { return project_disc_field(v); },
      [](const std::vector<double>& x) { return project_disc_field(x); },
      [](const std::vector<double>& x, const std::vector<double>& v) {
        return dist_sq(x, v);
      },
      16, 52);

  run([](const std::vector<double>& v) { return project_box(v, 0.0, 1.0); },
      [](const std::vector<double>& x) { return project_box(x, 0.0, 1.0); },
      [](const std::vector<double>& x, const std::vector<double>& v) {
        return dist_sq(x, v);
      },
      9, 53);

  run([](const std::vector<double>& v) { return project_linf_box(v, 0.8); },
      [](const std::vector<double>& x) { return project_linf_box(x, 0.8); },
      [](const std::vector<double>& x, const std::vector<double>& v) {
        return dist_sq(x, v);
      },
      9, 54);

  run([](const std::vector<double>& v) {
        std::vector<double> ctr(v.size(), 0.0);
        return project_l2_ball(v, ctr, 1.0);
      },
      [](const std::vector<double>& x) {
        std::vector<double> ctr(x.size(), 0.0);
        return project_l2_ball(x, ctr, 1.0);
      },
      [](const std::vector<double>& x, const std::vector<double>& v) {
        return dist_sq(x, v);
      },
      9, 55);

  run([&](const std::vector<double>& v) { return prox_linf_norm(v, t); },
      [](const std::vector<double>& x) { return x; },
      [&](const std::vector<double>& x, const std::vector<double>& v) {
        return oracle::linf_prox_objective(x, v, t);
      },
      9, 56);

  run([&](const std::vector<double>& v) { return prox_linear_nonneg(v, t, c); },
      [](const std::vector<double>& x) {
        std::vector<double> y(x);
        for (double& z : y) z = std::max(z, 0.0);
        return y;
      },
      [&](const std::vector<double>& x, const std::vector<double>& v) {
        double lin = 0;
        for (std::size_t i = 0; i < x.size(); ++i) lin += c[i] * x[i];
        return lin + dist_sq(x, v) / (2 * t);
      },
      9, 57);

  {
    const std::size_t n = 8;
    SubsampledHadamardOperator op(n, random_mask(n, 3, 4));
    std::mt19937_64 rng(58);
    std::vector<double> b = gaussian_vector<double>(n, rng);
    run([&](const std::vector<double>& v) {
          return prox_subsampled_quadratic(v, t, op, b, mu);
        },
        [](const std::vector<double>& x) { return x; },
        [&](const std::vector<double>& x, const std::vector<double>& v) {
          std::vector<double> rx = apply_op<double>(op, x);
          double data = 0;
          for (std::size_t i = 0; i < n; ++i) data += (rx[i] - b[i]) * (rx[i] - b[i]);
          return 0.5 * mu * data + dist_sq(x, v) / (2 * t);
        },
        n, 58);
  }
}

TEST_CASE("nonexpansiveness on 1000 seeded pairs per operation") {
  std::mt19937_64 setup(60);
  std::vector<double> f = gaussian_vector<double>(6, setup);
  std::vector<double> c = gaussian_vector<double>(6, setup);
  const double t = 0.8, mu = 0.9;

  check_nonexpansive<double>(
      [&](const std::vector<double>& v) { return prox_quadratic(v, t, f, mu); }, 6, 61);
  check_nonexpansive<double>(
      [](const std::vector<double>& v) { return project_disc_field(v); }, 8, 62);
  check_nonexpansive<double>(
      [](const std::vector<double>& v) { return project_box(v, 0.0, 1.0); }, 6, 63);
  check_nonexpansive<double>(
      [](const std::vector<double>& v) { return project_linf_box(v, 0.8); }, 6, 64);
  check_nonexpansive<cd>(
      [](const std::vector<cd>& v) { return project_linf_box(v, 0.8); }, 6, 65);
  check_nonexpansive<double>(
      [](const std::vector<double>& v) {
        std::vector<double> ctr(v.size(), 0.0);
        return project_l2_ball(v, ctr, 1.2);
      },
      6, 66);
  check_nonexpansive<double>(
      [&](const std::vector<double>& v) { return prox_linf_norm(v, t); }, 6, 67);
  check_nonexpansive<cd>(
      [&](const std::vector<cd>& v) { return prox_linf_norm(v, t); }, 6, 68);
  check_nonexpansive<double>(
      [&](const std::vector<double>& v) { return prox_linear_nonneg(v, t, c); }, 6, 69);
  SubsampledHadamardOperator op(8, random_mask(8, 3, 4));
  std::mt19937_64 rng(70);
  std::vector<double> b = gaussian_vector<double>(8, rng);
  check_nonexpansive<double>(
      [&](const std::vector<double>& v) {
        return prox_subsampled_quadratic(v, t, op, b, mu);
      },
      8, 71);
}

}  // TEST_SUITE
