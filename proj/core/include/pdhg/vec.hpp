#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace pdhg {

template <typename T>
struct scalar_traits {
  using real_type = T;
  static constexpr bool is_complex = false;
};

template <typename R>
struct scalar_traits<std::complex<R>> {
  using real_type = R;
  static constexpr bool is_complex = true;
};

template <typename T>
using real_of = typename scalar_traits<T>::real_type;

inline double conj_mul(double a, double b) { return a * b; }
inline std::complex<double> conj_mul(const std::complex<double>& a,
                                     const std::complex<double>& b) {
  return std::conj(a) * b;
}

// Hermitian inner product <a, b> = sum conj(a_i) * b_i.
template <typename T>
T inner(std::span<const T> a, std::span<const T> b) {
  T acc{};
  for (std::size_t i = 0; i < a.size(); ++i) acc += conj_mul(a[i], b[i]);
  return acc;
}

template <typename T>
double real_inner(std::span<const T> a, std::span<const T> b) {
  if constexpr (scalar_traits<T>::is_complex) {
    return inner<T>(a, b).real();
  } else {
    return inner<T>(a, b);
  }
}

template <typename T>
double l1_norm(std::span<const T> a) {
  double acc = 0.0;
  for (const T& v : a) acc += std::abs(v);
  return acc;
}

// std::norm(double) is the squared value, so this covers both fields.
template <typename T>
double l2_norm_sq(std::span<const T> a) {
  double acc = 0.0;
  for (const T& v : a) acc += std::norm(v);
  return acc;
}

template <typename T>
double l2_norm(std::span<const T> a) {
  return std::sqrt(l2_norm_sq<T>(a));
}

template <typename T>
double linf_norm(std::span<const T> a) {
  double m = 0.0;
  for (const T& v : a) m = std::max(m, std::abs(v));
  return m;
}

template <typename T>
bool all_finite(std::span<const T> a) {
  for (const T& v : a) {
    if constexpr (scalar_traits<T>::is_complex) {
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    } else {
      if (!std::isfinite(v)) return false;
    }
  }
  return true;
}

template <typename T>
std::vector<T> gaussian_vector(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  std::vector<T> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if constexpr (scalar_traits<T>::is_complex) {
      double re = dist(rng);
      double im = dist(rng);
      out[i] = T(re, im);
    } else {
      out[i] = dist(rng);
    }
  }
  return out;
}

}  // namespace pdhg
