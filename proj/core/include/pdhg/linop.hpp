#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pdhg/vec.hpp"

namespace pdhg {

// Linear map between finite-dimensional spaces over T (double or
// std::complex<double>).  apply_adjoint implements the adjoint with respect
// to the Hermitian inner product, so <Ax, y> == <x, A^T y> for all x, y.
template <typename T>
class LinearOperator {
 public:
  virtual ~LinearOperator() = default;

  virtual std::size_t domain_dim() const = 0;
  virtual std::size_t range_dim() const = 0;

  // out must have size range_dim(); x must have size domain_dim().
  virtual void apply(std::span<const T> x, std::span<T> out) const = 0;
  // out must have size domain_dim(); y must have size range_dim().
  virtual void apply_adjoint(std::span<const T> y, std::span<T> out) const = 0;
};

template <typename T>
std::vector<T> apply_op(const LinearOperator<T>& A, const std::vector<T>& x) {
  if (x.size() != A.domain_dim())
    throw std::invalid_argument("apply_op: input size " + std::to_string(x.size()) +
                                " does not match domain dim " +
                                std::to_string(A.domain_dim()));
  std::vector<T> out(A.range_dim());
  A.apply(x, out);
  return out;
}

template <typename T>
std::vector<T> adjoint_op(const LinearOperator<T>& A, const std::vector<T>& y) {
  if (y.size() != A.range_dim())
    throw std::invalid_argument("adjoint_op: input size " +
                                std::to_string(y.size()) +
                                " does not match range dim " +
                                std::to_string(A.range_dim()));
  std::vector<T> out(A.domain_dim());
  A.apply_adjoint(y, out);
  return out;
}

template <typename T>
class IdentityOperator final : public LinearOperator<T> {
 public:
  explicit IdentityOperator(std::size_t n) : n_(n) {}
  std::size_t domain_dim() const override { return n_; }
  std::size_t range_dim() const override { return n_; }
  void apply(std::span<const T> x, std::span<T> out) const override {
    std::copy(x.begin(), x.end(), out.begin());
  }
  void apply_adjoint(std::span<const T> y, std::span<T> out) const override {
    std::copy(y.begin(), y.end(), out.begin());
  }

 private:
  std::size_t n_;
};

template <typename T>
class ZeroOperator final : public LinearOperator<T> {
 public:
  ZeroOperator(std::size_t range, std::size_t domain)
      : range_(range), domain_(domain) {}
  std::size_t domain_dim() const override { return domain_; }
  std::size_t range_dim() const override { return range_; }
  void apply(std::span<const T>, std::span<T> out) const override {
    std::fill(out.begin(), out.end(), T{});
  }
  void apply_adjoint(std::span<const T>, std::span<T> out) const override {
    std::fill(out.begin(), out.end(), T{});
  }

 private:
  std::size_t range_, domain_;
};

// Dense matrix in row-major order; adjoint is the conjugate transpose.
template <typename T>
class DenseOperator final : public LinearOperator<T> {
 public:
  DenseOperator(std::size_t rows, std::size_t cols, std::vector<T> entries)
      : rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (a_.size() != rows_ * cols_)
      throw std::invalid_argument("DenseOperator: entry count does not match shape");
  }
  std::size_t domain_dim() const override { return cols_; }
  std::size_t range_dim() const override { return rows_; }
  void apply(std::span<const T> x, std::span<T> out) const override {
    for (std::size_t i = 0; i < rows_; ++i) {
      T acc{};
      const T* row = a_.data() + i * cols_;
      for (std::size_t j = 0; j < cols_; ++j) acc += row[j] * x[j];
      out[i] = acc;
    }
  }
  void apply_adjoint(std::span<const T> y, std::span<T> out) const override {
    std::fill(out.begin(), out.end(), T{});
    for (std::size_t i = 0; i < rows_; ++i) {
      const T* row = a_.data() + i * cols_;
      for (std::size_t j = 0; j < cols_; ++j) out[j] += conj_mul(row[j], y[i]);
    }
  }
  const std::vector<T>& entries() const { return a_; }

 private:
  std::size_t rows_, cols_;
  std::vector<T> a_;
};

template <typename T>
class ScaledOperator final : public LinearOperator<T> {
 public:
  ScaledOperator(std::shared_ptr<const LinearOperator<T>> inner, T scale)
      : inner_(std::move(inner)), scale_(scale) {}
  std::size_t domain_dim() const override { return inner_->domain_dim(); }
  std::size_t range_dim() const override { return inner_->range_dim(); }
  void apply(std::span<const T> x, std::span<T> out) const override {
    inner_->apply(x, out);
    for (T& v : out) v *= scale_;
  }
  void apply_adjoint(std::span<const T> y, std::span<T> out) const override {
    inner_->apply_adjoint(y, out);
    T s = scale_;
    if constexpr (scalar_traits<T>::is_complex) s = std::conj(scale_);
    for (T& v : out) v *= s;
  }

 private:
  std::shared_ptr<const LinearOperator<T>> inner_;
  T scale_;
};

// Stacks operators sharing one domain: x |-> (B1 x, B2 x, ...).
// The adjoint splits y into blocks and sums the per-block adjoints.
template <typename T>
class StackedOperator final : public LinearOperator<T> {
 public:
  explicit StackedOperator(std::vector<std::shared_ptr<const LinearOperator<T>>> blocks)
      : blocks_(std::move(blocks)) {
    if (blocks_.empty())
      throw std::invalid_argument("StackedOperator: no blocks");
    domain_ = blocks_.front()->domain_dim();
    range_ = 0;
    for (const auto& b : blocks_) {
      if (b->domain_dim() != domain_)
        throw std::invalid_argument("StackedOperator: blocks disagree on domain dim");
      range_ += b->range_dim();
    }
  }
  std::size_t domain_dim() const override { return domain_; }
  std::size_t range_dim() const override { return range_; }
  void apply(std::span<const T> x, std::span<T> out) const override {
    std::size_t off = 0;
    for (const auto& b : blocks_) {
      b->apply(x, out.subspan(off, b->range_dim()));
      off += b->range_dim();
    }
  }
  void apply_adjoint(std::span<const T> y, std::span<T> out) const override {
    std::fill(out.begin(), out.end(), T{});
    std::vector<T> tmp(domain_);
    std::size_t off = 0;
    for (const auto& b : blocks_) {
      b->apply_adjoint(y.subspan(off, b->range_dim()), tmp);
      for (std::size_t j = 0; j < domain_; ++j) out[j] += tmp[j];
      off += b->range_dim();
    }
  }

 private:
  std::vector<std::shared_ptr<const LinearOperator<T>>> blocks_;
  std::size_t domain_ = 0, range_ = 0;
};

// Concatenates domains: (x1, x2, ...) |-> B1 x1 + B2 x2 + ...; all blocks
// share one range.  This is the adjoint-dual layout of StackedOperator.
template <typename T>
class BlockRowOperator final : public LinearOperator<T> {
 public:
  explicit BlockRowOperator(std::vector<std::shared_ptr<const LinearOperator<T>>> blocks)
      : blocks_(std::move(blocks)) {
    if (blocks_.empty())
      throw std::invalid_argument("BlockRowOperator: no blocks");
    range_ = blocks_.front()->range_dim();
    domain_ = 0;
    for (const auto& b : blocks_) {
      if (b->range_dim() != range_)
        throw std::invalid_argument("BlockRowOperator: blocks disagree on range dim");
      domain_ += b->domain_dim();
    }
  }
  std::size_t domain_dim() const override { return domain_; }
  std::size_t range_dim() const override { return range_; }
  void apply(std::span<const T> x, std::span<T> out) const override {
    std::fill(out.begin(), out.end(), T{});
    std::vector<T> tmp(range_);
    std::size_t off = 0;
    for (const auto& b : blocks_) {
      b->apply(x.subspan(off, b->domain_dim()), tmp);
      for (std::size_t i = 0; i < range_; ++i) out[i] += tmp[i];
      off += b->domain_dim();
    }
  }
  void apply_adjoint(std::span<const T> y, std::span<T> out) const override {
    std::size_t off = 0;
    for (const auto& b : blocks_) {
      b->apply_adjoint(y, out.subspan(off, b->domain_dim()));
      off += b->domain_dim();
    }
  }

 private:
  std::vector<std::shared_ptr<const LinearOperator<T>>> blocks_;
  std::size_t domain_ = 0, range_ = 0;
};

}  // namespace pdhg
