#include "pdhg/grad2d.hpp"

#include <stdexcept>

namespace pdhg {

GradientOperator2D::GradientOperator2D(int rows, int cols)
    : rows_(rows), cols_(cols), n_(static_cast<std::size_t>(rows) * cols) {
  if (rows <= 0 || cols <= 0)
    throw std::invalid_argument("GradientOperator2D: dimensions must be positive");
}

void GradientOperator2D::apply(std::span<const double> x, std::span<double> out) const {
  const std::size_t n = n_;
  for (int r = 0; r < rows_; ++r) {
    const std::size_t row = static_cast<std::size_t>(r) * cols_;
    for (int c = 0; c < cols_; ++c) {
      const std::size_t i = row + c;
      out[i] = (c + 1 < cols_) ? x[i + 1] - x[i] : 0.0;
      out[n + i] = (r + 1 < rows_) ? x[i + cols_] - x[i] : 0.0;
    }
  }
}

void GradientOperator2D::apply_adjoint(std::span<const double> y, std::span<double> out) const {
  const std::size_t n = n_;
  for (int r = 0; r < rows_; ++r) {
    const std::size_t row = static_cast<std::size_t>(r) * cols_;
    for (int c = 0; c < cols_; ++c) {
      const std::size_t i = row + c;
      double acc = 0.0;
      if (c + 1 < cols_) acc -= y[i];
      if (c > 0) acc += y[i - 1];
      if (r + 1 < rows_) acc -= y[n + i];
      if (r > 0) acc += y[n + i - cols_];
      out[i] = acc;
    }
  }
}

}  // namespace pdhg
