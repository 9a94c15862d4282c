#include "pdhg/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace pdhg {

bool is_power_of_two(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

void fwht(std::span<double> x) {
  const std::size_t n = x.size();
  if (!is_power_of_two(n))
    throw std::invalid_argument("fwht: length must be a power of two");
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  for (std::size_t h = 1; h < n; h *= 2) {
    for (std::size_t block = 0; block < n; block += 2 * h) {
      for (std::size_t i = block; i < block + h; ++i) {
        double a = x[i];
        double b = x[i + h];
        x[i] = (a + b) * inv_sqrt2;
        x[i + h] = (a - b) * inv_sqrt2;
      }
    }
  }
}

std::vector<std::uint8_t> random_mask(std::size_t n, std::size_t count,
                                      std::uint64_t seed) {
  if (count > n)
    throw std::invalid_argument("random_mask: count exceeds length");
  std::vector<std::size_t> idx = random_rows(n, count, seed);
  std::vector<std::uint8_t> mask(n, 0);
  for (std::size_t i : idx) mask[i] = 1;
  return mask;
}

std::vector<std::size_t> random_rows(std::size_t n, std::size_t count,
                                     std::uint64_t seed) {
  if (count > n)
    throw std::invalid_argument("random_rows: count exceeds length");
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  std::mt19937_64 rng(seed);
  // Partial Fisher-Yates: the first `count` entries are a uniform sample.
  for (std::size_t i = 0; i < count; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(idx[i], idx[pick(rng)]);
  }
  idx.resize(count);
  std::sort(idx.begin(), idx.end());
  return idx;
}

SubsampledHadamardOperator::SubsampledHadamardOperator(std::size_t n,
                                                       std::vector<std::uint8_t> mask)
    : SubsampledTransformOperator<double>(n, std::move(mask)) {
  if (!is_power_of_two(n))
    throw std::invalid_argument("SubsampledHadamardOperator: n must be a power of two");
}

void SubsampledHadamardOperator::transform(std::span<const double> x,
                                           std::span<double> out) const {
  std::copy(x.begin(), x.end(), out.begin());
  fwht(out);
}

void SubsampledHadamardOperator::transform_adjoint(std::span<const double> y,
                                                   std::span<double> out) const {
  // Orthonormal and symmetric: the adjoint is the transform itself.
  std::copy(y.begin(), y.end(), out.begin());
  fwht(out);
}

SubsampledFourierOperator::SubsampledFourierOperator(std::size_t n,
                                                     std::vector<std::uint8_t> mask)
    : SubsampledTransformOperator<std::complex<double>>(n, std::move(mask)) {
  if (!is_power_of_two(n))
    throw std::invalid_argument("SubsampledFourierOperator: n must be a power of two");
  twiddle_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    double angle = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    twiddle_[k] = std::polar(1.0, angle);
  }
}

void SubsampledFourierOperator::transform(std::span<const std::complex<double>> x,
                                          std::span<std::complex<double>> out) const {
  const std::size_t n = n_;
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> acc{};
    for (std::size_t j = 0; j < n; ++j) acc += twiddle_[(k * j) % n] * x[j];
    out[k] = acc * scale;
  }
}

void SubsampledFourierOperator::transform_adjoint(std::span<const std::complex<double>> y,
                                                  std::span<std::complex<double>> out) const {
  const std::size_t n = n_;
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t j = 0; j < n; ++j) {
    std::complex<double> acc{};
    for (std::size_t k = 0; k < n; ++k) acc += std::conj(twiddle_[(k * j) % n]) * y[k];
    out[j] = acc * scale;
  }
}

DftRowsOperator::DftRowsOperator(std::size_t n, std::vector<std::size_t> rows)
    : n_(n), rows_(std::move(rows)) {
  if (n_ == 0) throw std::invalid_argument("DftRowsOperator: empty transform");
  const double scale = 1.0 / std::sqrt(static_cast<double>(n_));
  matrix_.reserve(rows_.size() * n_);
  for (std::size_t k : rows_) {
    if (k >= n_)
      throw std::invalid_argument("DftRowsOperator: row index out of range");
    for (std::size_t j = 0; j < n_; ++j) {
      double angle = -2.0 * std::numbers::pi *
                     static_cast<double>(k) * static_cast<double>(j) /
                     static_cast<double>(n_);
      matrix_.push_back(std::polar(scale, angle));
    }
  }
}

void DftRowsOperator::apply(std::span<const std::complex<double>> x,
                            std::span<std::complex<double>> out) const {
  const std::size_t m = rows_.size();
  for (std::size_t i = 0; i < m; ++i) {
    std::complex<double> acc{};
    const std::complex<double>* row = matrix_.data() + i * n_;
    for (std::size_t j = 0; j < n_; ++j) acc += row[j] * x[j];
    out[i] = acc;
  }
}

void DftRowsOperator::apply_adjoint(std::span<const std::complex<double>> y,
                                    std::span<std::complex<double>> out) const {
  std::fill(out.begin(), out.end(), std::complex<double>{});
  const std::size_t m = rows_.size();
  for (std::size_t i = 0; i < m; ++i) {
    const std::complex<double>* row = matrix_.data() + i * n_;
    for (std::size_t j = 0; j < n_; ++j) out[j] += std::conj(row[j]) * y[i];
  }
}

}  // namespace pdhg
