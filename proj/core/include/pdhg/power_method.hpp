#pragma once

#include <cstdint>
#include <random>

#include "pdhg/linop.hpp"
#include "pdhg/vec.hpp"

namespace pdhg {

// Power iteration on A^T A starting from a seeded Gaussian vector.  Returns
// the last Rayleigh quotient, which is a lower estimate of rho(A^T A) and is
// nondecreasing in the iteration count for a fixed seed.
template <typename T>
double estimate_spectral_norm(const LinearOperator<T>& A, int iters,
                              std::uint64_t seed) {
  if (iters <= 0)
    throw std::invalid_argument("estimate_spectral_norm: iters must be positive");
  std::mt19937_64 rng(seed);
  std::vector<T> x = gaussian_vector<T>(A.domain_dim(), rng);
  double nx = l2_norm<T>(x);
  if (nx == 0.0) return 0.0;
  for (T& v : x) v /= nx;

  std::vector<T> ax(A.range_dim());
  std::vector<T> w(A.domain_dim());
  double estimate = 0.0;
  for (int k = 0; k < iters; ++k) {
    A.apply(x, ax);
    A.apply_adjoint(ax, w);
    // x is unit length, so the Rayleigh quotient is just <x, A^T A x>.
    estimate = real_inner<T>(x, w);
    double nw = l2_norm<T>(w);
    if (nw == 0.0) return 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) x[i] = w[i] / nw;
  }
  return estimate;
}

}  // namespace pdhg
