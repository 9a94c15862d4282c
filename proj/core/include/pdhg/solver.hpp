#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pdhg/linop.hpp"
#include "pdhg/prox.hpp"
#include "pdhg/vec.hpp"

namespace pdhg {

// Saddle problem min_x max_y f(x) + <y, Ax> - g(y), described by the coupling
// operator and the resolvents of f and g.  Over the complex field the pairing
// is the real part of the Hermitian inner product.
template <typename T>
struct SaddlePointProblem {
  std::shared_ptr<const LinearOperator<T>> op;
  ProxOperator<T> prox_primal;  // J_{tau F}
  ProxOperator<T> prox_dual;    // J_{sigma G}
  double residual_scale = 1.0;  // s in the balancing test p <> s*d
  std::optional<double> rho_bound;  // known upper bound on rho(A^T A)
  std::vector<T> x0, y0;            // warm start; empty means zeros
  std::function<double(const std::vector<T>&)> objective;  // optional, for traces
};

template <typename T>
struct Iterate {
  std::vector<T> x, y;
};

// Stepsize state shared by the constant, residual-balancing and backtracking
// policies.  `product` pins tau*sigma in non-backtracking adaptive mode.
struct StepState {
  double tau = 0.0;
  double sigma = 0.0;
  double alpha = 0.5;  // balancing intensity, decays by eta on every change
  double delta = 1.5;  // balancing trigger: update only when p/d leaves [s/delta, s*delta]
  double eta = 0.95;
  double gamma = 0.75;  // safety margin inside the backtracking ratio
  double beta = 0.95;   // extra shrink applied on a rejected step
  std::optional<double> product;
  int backtrack_count = 0;
};

struct ResidualNorms {
  double p = 0.0;  // l1 norm of the primal residual (length = domain dim)
  double d = 0.0;  // l1 norm of the dual residual (length = range dim)
};

enum class PolicyKind { constant, adaptive, adaptive_backtracking };

struct StepPolicy {
  PolicyKind kind = PolicyKind::adaptive;
  std::optional<double> tau0, sigma0;

  static StepPolicy constant(double tau, double sigma) {
    return {PolicyKind::constant, tau, sigma};
  }
  // Stepsizes derived from the problem's rho_bound at solve time.
  static StepPolicy adaptive() { return {PolicyKind::adaptive, {}, {}}; }
  static StepPolicy adaptive(double tau0, double sigma0) {
    return {PolicyKind::adaptive, tau0, sigma0};
  }
  // Initial stepsizes probed from the operator norm at solve time.
  static StepPolicy adaptive_backtracking() {
    return {PolicyKind::adaptive_backtracking, {}, {}};
  }
  static StepPolicy adaptive_backtracking(double tau0, double sigma0) {
    return {PolicyKind::adaptive_backtracking, tau0, sigma0};
  }
};

struct SolveOptions {
  double tol = 0.05;
  // Compare raw l1 residual norms against tol instead of per-element means.
  bool absolute_tolerance = false;
  int max_iters = 20000;
  double alpha0 = 0.5;
  double delta = 1.5;
  double eta = 0.95;
  double gamma = 0.75;
  double beta = 0.95;
  std::optional<double> residual_scale;  // overrides the problem's s
  std::uint64_t seed = 0;                // drives the backtracking init probe
  bool keep_history = false;             // retain accepted iterates
};

struct TraceRecord {
  int iter = 0;  // accepted-iterate index the trial was computing (1-based)
  double tau = 0.0, sigma = 0.0;
  std::optional<double> p, d;  // set on accepted steps
  std::optional<double> b;     // set when the backtracking ratio was computed
  bool backtracked = false;    // true: trial rejected, iterate not advanced
  std::optional<double> objective;
};

enum class SolveStatus { converged, max_iters, diverged };

struct SolverTrace {
  std::vector<TraceRecord> records;  // one per trial step, rejected included
  SolveStatus status = SolveStatus::max_iters;
  int iterations = 0;  // accepted steps
  int backtracks = 0;
  int diverged_iter = -1;
  std::size_t domain_dim = 0, range_dim = 0;
};

template <typename T>
struct SolveResult {
  Iterate<T> iterate;
  SolverTrace trace;
  StepState final_state;
  std::vector<Iterate<T>> history;  // accepted iterates, when requested
};

// ---- stepsize initialization ----

// Known-bound mode: tau = sigma = 0.95 / sqrt(rho_bound), so the product
// stays strictly below 1/rho(A^T A).
inline StepState init_stepsizes(double rho_bound) {
  if (!(rho_bound > 0.0))
    throw std::invalid_argument("init_stepsizes: rho_bound must be positive");
  StepState st;
  st.tau = st.sigma = 0.95 / std::sqrt(rho_bound);
  st.product = st.tau * st.sigma;
  return st;
}

// Probe mode for backtracking: tau = sigma = sqrt(2||x|| / ||A^T A x||) for a
// seeded Gaussian probe x.  May overshoot 1/rho; backtracking corrects that.
template <typename T>
StepState init_stepsizes(const LinearOperator<T>& A, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<T> x = gaussian_vector<T>(A.domain_dim(), rng);
  std::vector<T> ax(A.range_dim());
  std::vector<T> w(A.domain_dim());
  A.apply(x, ax);
  A.apply_adjoint(ax, w);
  double nw = l2_norm<T>(w);
  if (nw == 0.0)
    throw std::invalid_argument(
        "init_stepsizes: operator maps the probe to zero; supply stepsizes explicitly");
  StepState st;
  st.tau = st.sigma = std::sqrt(2.0 * l2_norm<T>(x) / nw);
  return st;
}

// ---- one iteration ----

// x' = J_{tau F}(x - tau A^T y); y' = J_{sigma G}(y + sigma A(2x' - x)).
// Consumes the cached A x and A^T y of the current iterate and returns the
// caches of the new one, so each trial costs exactly one apply and one
// adjoint apply.
template <typename T>
void pdhg_step(const SaddlePointProblem<T>& prob, const Iterate<T>& cur,
               const StepState& st, const std::vector<T>& Ax_cur,
               const std::vector<T>& ATy_cur, Iterate<T>& next,
               std::vector<T>& Ax_next, std::vector<T>& ATy_next) {
  const std::size_t n = prob.op->domain_dim();
  const std::size_t m = prob.op->range_dim();
  std::vector<T> hat(n);
  for (std::size_t i = 0; i < n; ++i) hat[i] = cur.x[i] - st.tau * ATy_cur[i];
  next.x = prob.prox_primal.eval(hat, st.tau);
  if (next.x.size() != n)
    throw std::invalid_argument("pdhg_step: primal prox returned wrong size");

  Ax_next.resize(m);
  prob.op->apply(next.x, Ax_next);

  std::vector<T> yhat(m);
  for (std::size_t i = 0; i < m; ++i)
    yhat[i] = cur.y[i] + st.sigma * (2.0 * Ax_next[i] - Ax_cur[i]);
  next.y = prob.prox_dual.eval(yhat, st.sigma);
  if (next.y.size() != m)
    throw std::invalid_argument("pdhg_step: dual prox returned wrong size");

  ATy_next.resize(n);
  prob.op->apply_adjoint(next.y, ATy_next);
}

// ---- residuals ----

// P = (x - x')/tau - A^T(y - y'), D = (y - y')/sigma - A(x - x'), evaluated
// from cached operator products only.
template <typename T>
ResidualNorms compute_residuals(const Iterate<T>& prev, const Iterate<T>& next,
                                const StepState& st, const std::vector<T>& Ax_prev,
                                const std::vector<T>& Ax_next,
                                const std::vector<T>& ATy_prev,
                                const std::vector<T>& ATy_next,
                                std::vector<T>* primal_out = nullptr,
                                std::vector<T>* dual_out = nullptr) {
  ResidualNorms r;
  const std::size_t n = prev.x.size();
  const std::size_t m = prev.y.size();
  if (primal_out) primal_out->resize(n);
  if (dual_out) dual_out->resize(m);
  for (std::size_t i = 0; i < n; ++i) {
    T v = (prev.x[i] - next.x[i]) / st.tau - (ATy_prev[i] - ATy_next[i]);
    r.p += std::abs(v);
    if (primal_out) (*primal_out)[i] = v;
  }
  for (std::size_t i = 0; i < m; ++i) {
    T v = (prev.y[i] - next.y[i]) / st.sigma - (Ax_prev[i] - Ax_next[i]);
    r.d += std::abs(v);
    if (dual_out) (*dual_out)[i] = v;
  }
  return r;
}

// ---- residual balancing ----

namespace detail {

// Partner stepsize for a pinned product: L / x, nudged by ulps so the pair
// multiplies bitwise to L.  Empty when no representable partner exists for
// this exact x.
inline std::optional<double> product_partner(double L, double x) {
  double y = L / x;
  if (x * y == L) return y;
  double cand = y;
  for (int i = 0; i < 2; ++i) {
    cand = std::nextafter(cand, std::numeric_limits<double>::infinity());
    if (x * cand == L) return cand;
  }
  cand = y;
  for (int i = 0; i < 2; ++i) {
    cand = std::nextafter(cand, 0.0);
    if (x * cand == L) return cand;
  }
  return std::nullopt;
}

// Stepsize pair (x, y) with x*y bitwise equal to L and x within a few ulps of
// the requested value.  The products x*y sweep the target's neighborhood in
// increments of at most two ulps of L as the factors are nudged, so a nearby
// exact pair essentially always exists; the unsnapped quotient is a last
// resort.
inline std::pair<double, double> pinned_pair(double L, double x) {
  if (std::optional<double> y = product_partner(L, x)) return {x, *y};
  double up = x, dn = x;
  for (int i = 0; i < 16; ++i) {
    up = std::nextafter(up, std::numeric_limits<double>::infinity());
    if (std::optional<double> y = product_partner(L, up)) return {up, *y};
    dn = std::nextafter(dn, 0.0);
    if (std::optional<double> y = product_partner(L, dn)) return {dn, *y};
  }
  return {x, L / x};
}

}  // namespace detail

// One application of the balancing rule: grow the stepsize on the side whose
// residual dominates by more than delta, shrink the other, decay alpha.  No
// change when p/d stays within the band.
inline StepState adapt_stepsizes(const ResidualNorms& r, const StepState& st,
                                 double s) {
  StepState out = st;
  if (r.p > s * r.d * st.delta) {
    out.tau = st.tau / (1.0 - st.alpha);
    if (out.product) {
      auto [tau, sigma] = detail::pinned_pair(*out.product, out.tau);
      out.tau = tau;
      out.sigma = sigma;
    } else {
      out.sigma = st.sigma * (1.0 - st.alpha);
    }
    out.alpha = st.alpha * st.eta;
  } else if (r.p < s * r.d / st.delta) {
    out.sigma = st.sigma / (1.0 - st.alpha);
    if (out.product) {
      auto [sigma, tau] = detail::pinned_pair(*out.product, out.sigma);
      out.sigma = sigma;
      out.tau = tau;
    } else {
      out.tau = st.tau * (1.0 - st.alpha);
    }
    out.alpha = st.alpha * st.eta;
  }
  return out;
}

// ---- backtracking ----

// b = 2 tau sigma Re<y' - y, A(x' - x)> / (gamma sigma ||x' - x||^2 +
//     gamma tau ||y' - y||^2); a trial is admissible when b <= 1.
// Zero denominator (no movement) counts as admissible.
template <typename T>
double backtrack_check(const Iterate<T>& prev, const Iterate<T>& next,
                       const StepState& st, const std::vector<T>& Ax_prev,
                       const std::vector<T>& Ax_next) {
  const std::size_t n = prev.x.size();
  const std::size_t m = prev.y.size();
  double num = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    T dy = next.y[i] - prev.y[i];
    T adx = Ax_next[i] - Ax_prev[i];
    if constexpr (scalar_traits<T>::is_complex) {
      num += (std::conj(dy) * adx).real();
    } else {
      num += dy * adx;
    }
  }
  num *= 2.0 * st.tau * st.sigma;
  double dx_sq = 0.0, dy_sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) dx_sq += std::norm(next.x[i] - prev.x[i]);
  for (std::size_t i = 0; i < m; ++i) dy_sq += std::norm(next.y[i] - prev.y[i]);
  double den = st.gamma * st.sigma * dx_sq + st.gamma * st.tau * dy_sq;
  if (den == 0.0) return 0.0;
  return num / den;
}

// Shrink both stepsizes by beta/b after a rejected trial.  alpha is left
// alone: balancing intensity should not pay for backtracking events.
inline StepState backtrack_update(const StepState& st, double b) {
  if (!(b > 0.0))
    throw std::invalid_argument("backtrack_update: b must be positive");
  StepState out = st;
  out.tau = st.tau * st.beta / b;
  out.sigma = st.sigma * st.beta / b;
  out.backtrack_count = st.backtrack_count + 1;
  out.product.reset();
  return out;
}

// ---- driver ----

template <typename T>
SolveResult<T> solve(const SaddlePointProblem<T>& prob, const StepPolicy& policy,
                     const SolveOptions& opt = {}) {
  if (!prob.op) throw std::invalid_argument("solve: problem has no operator");
  if (!prob.prox_primal.eval || !prob.prox_dual.eval)
    throw std::invalid_argument("solve: problem is missing a resolvent");
  if (!(opt.tol >= 0.0)) throw std::invalid_argument("solve: tol must be nonnegative");
  if (opt.max_iters <= 0)
    throw std::invalid_argument("solve: max_iters must be positive");

  const std::size_t n = prob.op->domain_dim();
  const std::size_t m = prob.op->range_dim();
  if (!prob.x0.empty() && prob.x0.size() != n)
    throw std::invalid_argument("solve: x0 size does not match domain dim");
  if (!prob.y0.empty() && prob.y0.size() != m)
    throw std::invalid_argument("solve: y0 size does not match range dim");

  StepState st;
  switch (policy.kind) {
    case PolicyKind::constant:
      if (!policy.tau0 || !policy.sigma0)
        throw std::invalid_argument("solve: constant policy needs explicit stepsizes");
      st.tau = *policy.tau0;
      st.sigma = *policy.sigma0;
      break;
    case PolicyKind::adaptive:
      if (policy.tau0 && policy.sigma0) {
        st.tau = *policy.tau0;
        st.sigma = *policy.sigma0;
      } else if (prob.rho_bound) {
        st = init_stepsizes(*prob.rho_bound);
      } else {
        throw std::invalid_argument(
            "solve: adaptive policy needs stepsizes or a problem rho_bound");
      }
      st.product = st.tau * st.sigma;
      break;
    case PolicyKind::adaptive_backtracking:
      if (policy.tau0 && policy.sigma0) {
        st.tau = *policy.tau0;
        st.sigma = *policy.sigma0;
      } else {
        st = init_stepsizes(*prob.op, opt.seed);
      }
      st.product.reset();
      break;
  }
  if (!(st.tau > 0.0) || !(st.sigma > 0.0))
    throw std::invalid_argument("solve: stepsizes must be positive");
  st.alpha = opt.alpha0;
  st.delta = opt.delta;
  st.eta = opt.eta;
  st.gamma = opt.gamma;
  st.beta = opt.beta;

  const double s = opt.residual_scale.value_or(prob.residual_scale);
  const bool backtracking = policy.kind == PolicyKind::adaptive_backtracking;
  const bool adapting = policy.kind != PolicyKind::constant;

  SolveResult<T> res;
  res.trace.domain_dim = n;
  res.trace.range_dim = m;

  Iterate<T> cur{prob.x0.empty() ? std::vector<T>(n) : prob.x0,
                 prob.y0.empty() ? std::vector<T>(m) : prob.y0};
  std::vector<T> Ax = apply_op(*prob.op, cur.x);
  std::vector<T> ATy = adjoint_op(*prob.op, cur.y);

  Iterate<T> next;
  std::vector<T> Ax_next, ATy_next;

  for (int k = 1; k <= opt.max_iters; ++k) {
    std::optional<double> accepted_b;
    int consecutive_rejects = 0;
    for (;;) {
      pdhg_step(prob, cur, st, Ax, ATy, next, Ax_next, ATy_next);
      if (!all_finite<T>(next.x) || !all_finite<T>(next.y)) {
        res.trace.status = SolveStatus::diverged;
        res.trace.diverged_iter = k;
        res.iterate = std::move(cur);
        res.final_state = st;
        return res;
      }
      if (!backtracking) break;
      double b = backtrack_check(cur, next, st, Ax, Ax_next);
      if (b <= 1.0) {
        accepted_b = b;
        break;
      }
      res.trace.records.push_back(
          {k, st.tau, st.sigma, {}, {}, b, true, {}});
      st = backtrack_update(st, b);
      res.trace.backtracks += 1;
      if (++consecutive_rejects > 1000) {
        res.trace.status = SolveStatus::diverged;
        res.trace.diverged_iter = k;
        res.iterate = std::move(cur);
        res.final_state = st;
        return res;
      }
    }

    ResidualNorms r = compute_residuals(cur, next, st, Ax, Ax_next, ATy, ATy_next);
    std::optional<double> obj;
    if (prob.objective) obj = prob.objective(next.x);
    res.trace.records.push_back(
        {k, st.tau, st.sigma, r.p, r.d, accepted_b, false, obj});
    res.trace.iterations = k;

    cur = std::move(next);
    std::swap(Ax, Ax_next);
    std::swap(ATy, ATy_next);
    if (opt.keep_history) res.history.push_back(cur);

    double p_measure = opt.absolute_tolerance ? r.p : r.p / static_cast<double>(n);
    double d_measure = opt.absolute_tolerance ? r.d : r.d / static_cast<double>(m);
    if (p_measure <= opt.tol && d_measure <= opt.tol) {
      res.trace.status = SolveStatus::converged;
      break;
    }
    if (adapting) st = adapt_stepsizes(r, st, s);
  }

  res.iterate = std::move(cur);
  res.final_state = st;
  return res;
}

}  // namespace pdhg
