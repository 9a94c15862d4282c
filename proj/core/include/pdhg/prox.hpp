#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "pdhg/transforms.hpp"

namespace pdhg {

// Resolvent map v |-> argmin_x h(x) + (1/2t)||x - v||^2 for some convex h.
// The callable receives the point and the step t.
template <typename T>
struct ProxOperator {
  std::function<std::vector<T>(const std::vector<T>&, double)> eval;
  std::string label;
};

template <typename T>
ProxOperator<T> identity_prox() {
  return {[](const std::vector<T>& v, double) { return v; }, "identity"};
}

inline void require_positive_step(double t, const char* who) {
  if (!(t > 0.0))
    throw std::invalid_argument(std::string(who) + ": step must be positive");
}

// argmin_x (mu/2)||x - f||^2 + (1/2t)||x - v||^2 = (v + t*mu*f) / (1 + t*mu).
inline std::vector<double> prox_quadratic(const std::vector<double>& v, double t,
                                          const std::vector<double>& f, double mu) {
  require_positive_step(t, "prox_quadratic");
  if (mu < 0.0) throw std::invalid_argument("prox_quadratic: mu must be nonnegative");
  if (f.size() != v.size())
    throw std::invalid_argument("prox_quadratic: size mismatch between v and f");
  std::vector<double> out(v.size());
  const double w = t * mu;
  const double inv = 1.0 / (1.0 + w);
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = (v[i] + w * f[i]) * inv;
  return out;
}

// Projects a two-channel field (stacked halves) onto per-pixel unit discs:
// each pair (y[i], y[N+i]) is divided by max{sqrt(y1^2 + y2^2), 1}.
inline std::vector<double> project_disc_field(const std::vector<double>& y) {
  if (y.size() % 2 != 0)
    throw std::invalid_argument("project_disc_field: length must be even");
  const std::size_t n = y.size() / 2;
  std::vector<double> out(y);
  for (std::size_t i = 0; i < n; ++i) {
    double r = std::hypot(out[i], out[n + i]);
    if (r > 1.0) {
      out[i] /= r;
      out[n + i] /= r;
    }
  }
  return out;
}

inline std::vector<double> project_box(const std::vector<double>& v, double lo,
                                       double hi) {
  if (lo > hi) throw std::invalid_argument("project_box: lo exceeds hi");
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::clamp(v[i], lo, hi);
  return out;
}

// Projection onto {x : ||x||_inf <= mu}.  Real: coordinatewise clamp.
inline std::vector<double> project_linf_box(const std::vector<double>& v, double mu) {
  if (mu < 0.0) throw std::invalid_argument("project_linf_box: mu must be nonnegative");
  return project_box(v, -mu, mu);
}

// Complex: rescale each component to magnitude mu, preserving phase.
inline std::vector<std::complex<double>> project_linf_box(
    const std::vector<std::complex<double>>& v, double mu) {
  if (mu < 0.0) throw std::invalid_argument("project_linf_box: mu must be nonnegative");
  std::vector<std::complex<double>> out(v);
  for (auto& z : out) {
    double r = std::abs(z);
    if (r > mu) z *= mu / r;
  }
  return out;
}

template <typename T>
std::vector<T> project_l2_ball(const std::vector<T>& v, const std::vector<T>& center,
                               double radius) {
  if (radius < 0.0)
    throw std::invalid_argument("project_l2_ball: radius must be nonnegative");
  if (center.size() != v.size())
    throw std::invalid_argument("project_l2_ball: size mismatch between v and center");
  double dist_sq = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) dist_sq += std::norm(v[i] - center[i]);
  double dist = std::sqrt(dist_sq);
  if (dist <= radius) return v;
  std::vector<T> out(v.size());
  const double scale = radius / dist;
  for (std::size_t i = 0; i < v.size(); ++i)
    out[i] = center[i] + (v[i] - center[i]) * scale;
  return out;
}

// Projection onto the l1 ball of the given radius acting on magnitudes,
// preserving phases: the usual sort-based simplex threshold.
template <typename T>
std::vector<T> project_l1_ball(const std::vector<T>& v, double radius) {
  if (radius < 0.0)
    throw std::invalid_argument("project_l1_ball: radius must be nonnegative");
  std::vector<double> mag(v.size());
  double total = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    mag[i] = std::abs(v[i]);
    total += mag[i];
  }
  if (total <= radius) return v;
  std::vector<double> sorted(mag);
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    cumulative += sorted[k];
    double candidate = (cumulative - radius) / static_cast<double>(k + 1);
    if (k + 1 == sorted.size() || candidate >= sorted[k + 1]) {
      theta = candidate;
      break;
    }
  }
  std::vector<T> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    double shrunk = std::max(mag[i] - theta, 0.0);
    out[i] = (shrunk > 0.0) ? v[i] * (shrunk / mag[i]) : T{};
  }
  return out;
}

// prox of t*||.||_inf via the Moreau identity: v minus the projection of v
// onto the l1 ball of radius t.
template <typename T>
std::vector<T> prox_linf_norm(const std::vector<T>& v, double t) {
  require_positive_step(t, "prox_linf_norm");
  std::vector<T> proj = project_l1_ball(v, t);
  std::vector<T> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] - proj[i];
  return out;
}

// argmin_{x >= 0} c^T x + (1/2t)||x - v||^2 = max(v - t*c, 0) elementwise.
inline std::vector<double> prox_linear_nonneg(const std::vector<double>& v, double t,
                                              const std::vector<double>& c) {
  require_positive_step(t, "prox_linear_nonneg");
  if (c.size() != v.size())
    throw std::invalid_argument("prox_linear_nonneg: size mismatch between v and c");
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::max(v[i] - t * c[i], 0.0);
  return out;
}

// argmin_x (mu/2)||R H x - b||^2 + (1/2t)||x - v||^2 where H is the
// orthonormal transform of `op` and R its coefficient mask.  Diagonal in the
// transform domain: masked coefficients blend toward b, unmasked pass through.
template <typename T>
std::vector<T> prox_subsampled_quadratic(const std::vector<T>& v, double t,
                                         const SubsampledTransformOperator<T>& op,
                                         const std::vector<T>& b, double mu) {
  require_positive_step(t, "prox_subsampled_quadratic");
  if (mu < 0.0)
    throw std::invalid_argument("prox_subsampled_quadratic: mu must be nonnegative");
  if (v.size() != op.domain_dim())
    throw std::invalid_argument("prox_subsampled_quadratic: v size mismatch");
  if (b.size() != op.range_dim())
    throw std::invalid_argument("prox_subsampled_quadratic: b size mismatch");
  std::vector<T> u(op.range_dim());
  op.transform(v, u);
  const auto& mask = op.mask();
  const double w = t * mu;
  const double inv = 1.0 / (1.0 + w);
  for (std::size_t i = 0; i < u.size(); ++i)
    if (mask[i]) u[i] = (u[i] + w * b[i]) * inv;
  std::vector<T> out(op.domain_dim());
  op.transform_adjoint(u, out);
  return out;
}

}  // namespace pdhg
