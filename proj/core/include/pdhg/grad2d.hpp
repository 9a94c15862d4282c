#pragma once

#include "pdhg/linop.hpp"

namespace pdhg {

// Forward-difference gradient of a rows x cols image stored row-major.
// Output stacks two channels of length rows*cols: horizontal differences
// first, vertical differences second.  Differences across the last column
// and last row are zero (replicated boundary), which makes the adjoint the
// negative discrete divergence and bounds rho(A^T A) by 8.
class GradientOperator2D final : public LinearOperator<double> {
 public:
  GradientOperator2D(int rows, int cols);

  std::size_t domain_dim() const override { return n_; }
  std::size_t range_dim() const override { return 2 * n_; }
  void apply(std::span<const double> x, std::span<double> out) const override;
  void apply_adjoint(std::span<const double> y, std::span<double> out) const override;

  int rows() const { return rows_; }
  int cols() const { return cols_; }

 private:
  int rows_, cols_;
  std::size_t n_;
};

}  // namespace pdhg
