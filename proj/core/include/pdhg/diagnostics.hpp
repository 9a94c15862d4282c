#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>

#include "pdhg/solver.hpp"

namespace pdhg {

// Post-hoc audit of the stepsize sequence recorded in a trace:
//   (A) stepsizes stayed bounded (max values reported);
//   (B) the summed relative decreases phi_k = max{(tau_k - tau_{k+1})/tau_k,
//       (sigma_k - sigma_{k+1})/sigma_k, 0} are finite, and the part caused by
//       balancing stays under the geometric bound alpha0/(1 - eta);
//   (C1) tau*sigma stayed below 1/rho_bound, when a bound is supplied;
//   (C2) every accepted step that computed a backtracking ratio had b <= 1.
struct ConditionsReport {
  double max_tau = 0.0;
  double max_sigma = 0.0;
  double sum_phi = 0.0;            // over all consecutive records
  double sum_phi_balancing = 0.0;  // excluding decreases caused by rejections
  double phi_bound = 0.0;          // alpha0 / (1 - eta)
  bool phi_within_bound = false;
  std::optional<bool> c1_ok;  // set when rho_bound was supplied
  std::optional<bool> c2_ok;  // set when any record carries b
  int backtrack_events = 0;
  int last_backtrack_record = -1;  // index into records, -1 when none
};

inline ConditionsReport check_convergence_conditions(
    const SolverTrace& trace, std::optional<double> rho_bound = {},
    double alpha0 = 0.5, double eta = 0.95) {
  if (!(eta > 0.0 && eta < 1.0))
    throw std::invalid_argument("check_convergence_conditions: eta must be in (0,1)");
  ConditionsReport rep;
  rep.phi_bound = alpha0 / (1.0 - eta);
  bool any_b = false;
  bool c2 = true;
  bool c1 = true;
  for (std::size_t i = 0; i < trace.records.size(); ++i) {
    const TraceRecord& r = trace.records[i];
    rep.max_tau = std::max(rep.max_tau, r.tau);
    rep.max_sigma = std::max(rep.max_sigma, r.sigma);
    if (r.backtracked) {
      rep.backtrack_events += 1;
      rep.last_backtrack_record = static_cast<int>(i);
    }
    if (r.b) {
      any_b = true;
      if (!r.backtracked && *r.b > 1.0) c2 = false;
    }
    if (rho_bound && r.tau * r.sigma >= 1.0 / *rho_bound) c1 = false;
    if (i + 1 < trace.records.size()) {
      const TraceRecord& nx = trace.records[i + 1];
      double phi = std::max({(r.tau - nx.tau) / r.tau,
                             (r.sigma - nx.sigma) / r.sigma, 0.0});
      rep.sum_phi += phi;
      if (!r.backtracked) rep.sum_phi_balancing += phi;
    }
  }
  rep.phi_within_bound = rep.sum_phi_balancing <= rep.phi_bound + 1e-12;
  if (rho_bound) rep.c1_ok = c1;
  if (any_b) rep.c2_ok = c2;
  return rep;
}

// Squared norm ||u||_M^2 = ||x||^2/tau + ||y||^2/sigma - 2 Re<y, Ax> for the
// iteration metric M = [[I/tau, -A^T], [-A, I/sigma]].  Positive definite
// whenever tau*sigma*rho(A^T A) < 1.
template <typename T>
double m_norm_squared(const LinearOperator<T>& A, const Iterate<T>& u, double tau,
                      double sigma) {
  std::vector<T> ax = apply_op(A, u.x);
  double cross = real_inner<T>(u.y, ax);
  return l2_norm_sq<T>(u.x) / tau + l2_norm_sq<T>(u.y) / sigma - 2.0 * cross;
}

// Mean of the first t accepted iterates.
template <typename T>
Iterate<T> ergodic_average(const std::vector<Iterate<T>>& history, std::size_t t) {
  if (history.empty())
    throw std::invalid_argument("ergodic_average: history is empty (enable keep_history)");
  if (t == 0 || t > history.size())
    throw std::invalid_argument("ergodic_average: t out of range");
  Iterate<T> avg{std::vector<T>(history.front().x.size()),
                 std::vector<T>(history.front().y.size())};
  for (std::size_t k = 0; k < t; ++k) {
    for (std::size_t i = 0; i < avg.x.size(); ++i) avg.x[i] += history[k].x[i];
    for (std::size_t i = 0; i < avg.y.size(); ++i) avg.y[i] += history[k].y[i];
  }
  const double inv = 1.0 / static_cast<double>(t);
  for (auto& v : avg.x) v *= inv;
  for (auto& v : avg.y) v *= inv;
  return avg;
}

}  // namespace pdhg
