#include "pdhg/problems.hpp"

#include <cmath>
#include <stdexcept>

#include "pdhg/power_method.hpp"
#include "pdhg/prox.hpp"

namespace pdhg {

using cd = std::complex<double>;

double tv_value(const GradientOperator2D& grad, const std::vector<double>& x) {
  std::vector<double> g = apply_op<double>(grad, x);
  const std::size_t n = grad.domain_dim();
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::hypot(g[i], g[n + i]);
  return acc;
}

namespace {

void check_image(const Image& f, const char* who) {
  if (f.rows <= 0 || f.cols <= 0 ||
      f.px.size() != static_cast<std::size_t>(f.rows) * f.cols)
    throw std::invalid_argument(std::string(who) + ": malformed image");
}

}  // namespace

SaddlePointProblem<double> build_rof(const Image& f, double mu) {
  check_image(f, "build_rof");
  if (!(mu > 0.0)) throw std::invalid_argument("build_rof: mu must be positive");
  auto grad = std::make_shared<GradientOperator2D>(f.rows, f.cols);
  SaddlePointProblem<double> prob;
  prob.op = grad;
  std::vector<double> data = f.px;
  prob.prox_primal = {[data, mu](const std::vector<double>& v, double t) {
                        return prox_quadratic(v, t, data, mu);
                      },
                      "quadratic data term"};
  prob.prox_dual = {[](const std::vector<double>& v, double) {
                      return project_disc_field(v);
                    },
                    "per-pixel disc projection"};
  prob.rho_bound = 8.0;
  prob.objective = [grad, data, mu](const std::vector<double>& x) {
    double quad = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) quad += (x[i] - data[i]) * (x[i] - data[i]);
    return tv_value(*grad, x) + 0.5 * mu * quad;
  };
  return prob;
}

SaddlePointProblem<double> build_tvl1(const Image& f, double mu) {
  check_image(f, "build_tvl1");
  if (!(mu > 0.0)) throw std::invalid_argument("build_tvl1: mu must be positive");
  auto grad = std::make_shared<GradientOperator2D>(f.rows, f.cols);
  auto ident = std::make_shared<IdentityOperator<double>>(f.px.size());
  auto stacked = std::make_shared<StackedOperator<double>>(
      std::vector<std::shared_ptr<const LinearOperator<double>>>{grad, ident});
  const std::size_t n = f.px.size();
  std::vector<double> data = f.px;

  SaddlePointProblem<double> prob;
  prob.op = stacked;
  prob.prox_primal = identity_prox<double>();
  // First 2n entries: disc projection for the TV dual; last n entries carry
  // the l1 data term, whose resolvent is clamp(v - sigma*f) to [-mu, mu].
  prob.prox_dual = {[n, data, mu](const std::vector<double>& v, double t) {
                      std::vector<double> out(v.size());
                      std::vector<double> head(v.begin(), v.begin() + 2 * n);
                      std::vector<double> disc = project_disc_field(head);
                      std::copy(disc.begin(), disc.end(), out.begin());
                      for (std::size_t i = 0; i < n; ++i) {
                        double u = v[2 * n + i] - t * data[i];
                        out[2 * n + i] = std::clamp(u, -mu, mu);
                      }
                      return out;
                    },
                    "disc projection + shifted linf box"};
  prob.rho_bound = 9.0;  // rho(grad^T grad + I) <= 8 + 1
  prob.objective = [grad, data, mu](const std::vector<double>& x) {
    double l1 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) l1 += std::abs(x[i] - data[i]);
    return tv_value(*grad, x) + mu * l1;
  };
  return prob;
}

SaddlePointProblem<double> build_segmentation(const Image& f, double c1, double c2,
                                              double mu_weight) {
  check_image(f, "build_segmentation");
  if (mu_weight < 0.0)
    throw std::invalid_argument("build_segmentation: mu_weight must be nonnegative");
  auto grad = std::make_shared<GradientOperator2D>(f.rows, f.cols);
  std::vector<double> l(f.px.size());
  for (std::size_t i = 0; i < f.px.size(); ++i) {
    double d1 = f.px[i] - c1;
    double d2 = f.px[i] - c2;
    l[i] = mu_weight * (d1 * d1 - d2 * d2);
  }
  SaddlePointProblem<double> prob;
  prob.op = grad;
  prob.prox_primal = {[l](const std::vector<double>& v, double t) {
                        std::vector<double> shifted(v.size());
                        for (std::size_t i = 0; i < v.size(); ++i)
                          shifted[i] = v[i] - t * l[i];
                        return project_box(shifted, 0.0, 1.0);
                      },
                      "linear label term over [0,1]"};
  prob.prox_dual = {[](const std::vector<double>& v, double) {
                      return project_disc_field(v);
                    },
                    "per-pixel disc projection"};
  prob.rho_bound = 8.0;
  prob.objective = [grad, l](const std::vector<double>& x) {
    double lin = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) lin += x[i] * l[i];
    return tv_value(*grad, x) + lin;
  };
  return prob;
}

CompressedSensingSetup build_compressed_sensing(int rows, int cols, double rate,
                                                double mu, std::uint64_t seed) {
  if (rows <= 0 || cols <= 0)
    throw std::invalid_argument("build_compressed_sensing: dimensions must be positive");
  const std::size_t n = static_cast<std::size_t>(rows) * cols;
  if (!is_power_of_two(n))
    throw std::invalid_argument(
        "build_compressed_sensing: pixel count must be a power of two");
  if (rate < 0.0 || rate > 1.0)
    throw std::invalid_argument("build_compressed_sensing: rate must be in [0,1]");
  if (!(mu > 0.0))
    throw std::invalid_argument("build_compressed_sensing: mu must be positive");

  CompressedSensingSetup setup;
  setup.ground_truth = phantom_circles(rows, cols, seed);
  const std::size_t count =
      static_cast<std::size_t>(std::llround(rate * static_cast<double>(n)));
  // The first transform coefficient carries the image mean; without it the
  // data term is blind to constant shifts, so it is always sampled.
  std::vector<std::uint8_t> mask(n, 0);
  if (count > 0) {
    mask = random_mask(n - 1, count - 1, seed + 1);
    mask.insert(mask.begin(), std::uint8_t{1});
  }
  auto sensing = std::make_shared<SubsampledHadamardOperator>(n, std::move(mask));
  setup.sensing = sensing;
  setup.measurements = apply_op<double>(*sensing, setup.ground_truth.px);

  auto grad = std::make_shared<GradientOperator2D>(rows, cols);
  std::vector<double> b = setup.measurements;
  SaddlePointProblem<double> prob;
  prob.op = grad;
  prob.prox_primal = {[sensing, b, mu](const std::vector<double>& v, double t) {
                        return prox_subsampled_quadratic(v, t, *sensing, b, mu);
                      },
                      "subsampled quadratic data term"};
  prob.prox_dual = {[](const std::vector<double>& v, double) {
                      return project_disc_field(v);
                    },
                    "per-pixel disc projection"};
  prob.rho_bound = 8.0;
  prob.x0 = adjoint_op<double>(*sensing, b);
  prob.objective = [grad, sensing, b, mu](const std::vector<double>& x) {
    std::vector<double> r = apply_op<double>(*sensing, x);
    double quad = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) quad += (r[i] - b[i]) * (r[i] - b[i]);
    return tv_value(*grad, x) + 0.5 * mu * quad;
  };
  setup.problem = std::move(prob);
  return setup;
}

SaddlePointProblem<cd> build_linf_approx(
    std::shared_ptr<const LinearOperator<cd>> D, std::vector<cd> z, double epsilon) {
  if (!D) throw std::invalid_argument("build_linf_approx: null operator");
  if (epsilon < 0.0)
    throw std::invalid_argument("build_linf_approx: epsilon must be nonnegative");
  if (z.size() != D->range_dim())
    throw std::invalid_argument("build_linf_approx: z size does not match D");
  const std::size_t n = D->domain_dim();
  const std::size_t m = D->range_dim();

  auto minus_ident = std::make_shared<ScaledOperator<cd>>(
      std::make_shared<IdentityOperator<cd>>(m), cd(-1.0, 0.0));
  auto coupling = std::make_shared<BlockRowOperator<cd>>(
      std::vector<std::shared_ptr<const LinearOperator<cd>>>{D, minus_ident});

  SaddlePointProblem<cd> prob;
  prob.op = coupling;
  prob.prox_primal = {[n, m, epsilon](const std::vector<cd>& v, double t) {
                        std::vector<cd> x1(v.begin(), v.begin() + n);
                        std::vector<cd> x2(v.begin() + n, v.end());
                        std::vector<cd> out = prox_linf_norm(x1, t);
                        std::vector<cd> ball =
                            project_l2_ball(x2, std::vector<cd>(m), epsilon);
                        out.insert(out.end(), ball.begin(), ball.end());
                        return out;
                      },
                      "max-magnitude shrink + slack ball"};
  prob.prox_dual = {[z](const std::vector<cd>& v, double t) {
                      std::vector<cd> out(v.size());
                      for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] - t * z[i];
                      return out;
                    },
                    "linear target term"};
  // rho(A^T A) = 1 + rho(D^T D); exactly 2 when D has orthonormal rows.
  double d_norm = estimate_spectral_norm<cd>(*D, 100, 0);
  prob.rho_bound = 1.0 + 1.05 * d_norm;
  prob.objective = [n](const std::vector<cd>& x) {
    double mx = 0.0;
    for (std::size_t i = 0; i < n; ++i) mx = std::max(mx, std::abs(x[i]));
    return mx;
  };
  return prob;
}

std::pair<std::vector<double>, std::vector<double>> lp_scalings(
    const LpInstance& inst, LpPreconditioner kind) {
  std::vector<double> row(inst.m, 0.0), col(inst.n, 0.0);
  for (std::size_t i = 0; i < inst.m; ++i)
    for (std::size_t j = 0; j < inst.n; ++j) {
      double a = std::abs(inst.A[i * inst.n + j]);
      row[i] += a;
      col[j] += a;
    }
  if (kind == LpPreconditioner::none) return {row, col};
  for (std::size_t i = 0; i < inst.m; ++i)
    if (row[i] == 0.0)
      throw std::invalid_argument("lp_scalings: all-zero row " + std::to_string(i));
  for (std::size_t j = 0; j < inst.n; ++j)
    if (col[j] == 0.0)
      throw std::invalid_argument("lp_scalings: all-zero column " + std::to_string(j));
  if (kind == LpPreconditioner::inverse_sum) {
    for (double& v : row) v = 1.0 / v;
    for (double& v : col) v = 1.0 / v;
  }
  return {row, col};
}

std::vector<double> LpSaddle::recover_x(const std::vector<double>& xhat) const {
  if (col_scale_sqrt.empty()) return xhat;
  if (xhat.size() != col_scale_sqrt.size())
    throw std::invalid_argument("LpSaddle::recover_x: size mismatch");
  std::vector<double> x(xhat.size());
  for (std::size_t j = 0; j < xhat.size(); ++j) x[j] = col_scale_sqrt[j] * xhat[j];
  return x;
}

LpSaddle build_lp(const LpInstance& inst, LpPreconditioner pre) {
  if (inst.m == 0 || inst.n == 0 || inst.A.size() != inst.m * inst.n ||
      inst.b.size() != inst.m || inst.c.size() != inst.n)
    throw std::invalid_argument("build_lp: malformed instance");

  LpSaddle saddle;
  std::vector<double> a = inst.A;
  std::vector<double> b = inst.b;
  std::vector<double> c = inst.c;
  if (pre != LpPreconditioner::none) {
    auto [gamma, sigma] = lp_scalings(inst, pre);
    std::vector<double> gs(inst.m), ss(inst.n);
    for (std::size_t i = 0; i < inst.m; ++i) gs[i] = std::sqrt(gamma[i]);
    for (std::size_t j = 0; j < inst.n; ++j) ss[j] = std::sqrt(sigma[j]);
    for (std::size_t i = 0; i < inst.m; ++i) {
      for (std::size_t j = 0; j < inst.n; ++j) a[i * inst.n + j] *= gs[i] * ss[j];
      b[i] *= gs[i];
    }
    for (std::size_t j = 0; j < inst.n; ++j) c[j] *= ss[j];
    saddle.col_scale_sqrt = ss;
  }

  auto op = std::make_shared<DenseOperator<double>>(inst.m, inst.n, std::move(a));
  SaddlePointProblem<double> prob;
  prob.op = op;
  prob.prox_primal = {[c](const std::vector<double>& v, double t) {
                        return prox_linear_nonneg(v, t, c);
                      },
                      "linear cost over the nonnegative orthant"};
  prob.prox_dual = {[b](const std::vector<double>& v, double t) {
                      return prox_linear_nonneg(v, t, b);
                    },
                    "linear constraint term over the nonnegative orthant"};
  // Power-iteration estimate, inflated a little to act as an upper bound.
  prob.rho_bound = 1.02 * estimate_spectral_norm<double>(*op, 200, 0);
  prob.objective = [c](const std::vector<double>& x) {
    double acc = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) acc += c[j] * x[j];
    return acc;
  };
  saddle.problem = std::move(prob);
  return saddle;
}

}  // namespace pdhg
