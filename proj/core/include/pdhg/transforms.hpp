#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "pdhg/linop.hpp"

namespace pdhg {

// In-place orthonormal fast Walsh-Hadamard transform (Sylvester ordering).
// Length must be a power of two.  The transform is its own inverse.
void fwht(std::span<double> x);

bool is_power_of_two(std::size_t n);

// Picks `count` distinct indices from [0, n) with a seeded generator and
// returns them as a 0/1 mask.
std::vector<std::uint8_t> random_mask(std::size_t n, std::size_t count,
                                      std::uint64_t seed);

// Row-subsampled orthonormal transform R*H: apply H, then zero the
// coefficients outside the mask.  Since H is orthonormal, rho(A^T A) <= 1.
template <typename T>
class SubsampledTransformOperator : public LinearOperator<T> {
 public:
  SubsampledTransformOperator(std::size_t n, std::vector<std::uint8_t> mask)
      : n_(n), mask_(std::move(mask)) {
    if (mask_.size() != n_)
      throw std::invalid_argument("SubsampledTransformOperator: mask size mismatch");
  }

  std::size_t domain_dim() const override { return n_; }
  std::size_t range_dim() const override { return n_; }

  // The underlying orthonormal transform H and its adjoint H^T.
  virtual void transform(std::span<const T> x, std::span<T> out) const = 0;
  virtual void transform_adjoint(std::span<const T> y, std::span<T> out) const = 0;

  void apply(std::span<const T> x, std::span<T> out) const override {
    transform(x, out);
    for (std::size_t i = 0; i < n_; ++i)
      if (!mask_[i]) out[i] = T{};
  }
  void apply_adjoint(std::span<const T> y, std::span<T> out) const override {
    std::vector<T> tmp(y.begin(), y.end());
    for (std::size_t i = 0; i < n_; ++i)
      if (!mask_[i]) tmp[i] = T{};
    transform_adjoint(tmp, out);
  }

  const std::vector<std::uint8_t>& mask() const { return mask_; }

 protected:
  std::size_t n_;
  std::vector<std::uint8_t> mask_;
};

class SubsampledHadamardOperator final : public SubsampledTransformOperator<double> {
 public:
  SubsampledHadamardOperator(std::size_t n, std::vector<std::uint8_t> mask);
  void transform(std::span<const double> x, std::span<double> out) const override;
  void transform_adjoint(std::span<const double> y, std::span<double> out) const override;
};

// Unitary DFT variant; the transform is applied as a dense O(n^2) product,
// which is fine at the scales this library targets.
class SubsampledFourierOperator final
    : public SubsampledTransformOperator<std::complex<double>> {
 public:
  SubsampledFourierOperator(std::size_t n, std::vector<std::uint8_t> mask);
  void transform(std::span<const std::complex<double>> x,
                 std::span<std::complex<double>> out) const override;
  void transform_adjoint(std::span<const std::complex<double>> y,
                         std::span<std::complex<double>> out) const override;

 private:
  std::vector<std::complex<double>> twiddle_;  // exp(-2*pi*i*k/n)/sqrt(n) powers
};

// Compact m x n operator made of m selected rows of the n-point unitary DFT.
// Rows are orthonormal, so A A^T = I and rho(A^T A) = 1.
class DftRowsOperator final : public LinearOperator<std::complex<double>> {
 public:
  DftRowsOperator(std::size_t n, std::vector<std::size_t> rows);

  std::size_t domain_dim() const override { return n_; }
  std::size_t range_dim() const override { return rows_.size(); }
  void apply(std::span<const std::complex<double>> x,
             std::span<std::complex<double>> out) const override;
  void apply_adjoint(std::span<const std::complex<double>> y,
                     std::span<std::complex<double>> out) const override;

  const std::vector<std::size_t>& rows() const { return rows_; }

 private:
  std::size_t n_;
  std::vector<std::size_t> rows_;
  std::vector<std::complex<double>> matrix_;  // row-major m x n
};

// Picks `count` distinct row indices from [0, n).
std::vector<std::size_t> random_rows(std::size_t n, std::size_t count,
                                     std::uint64_t seed);

}  // namespace pdhg
