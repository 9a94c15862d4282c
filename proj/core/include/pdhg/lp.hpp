#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace pdhg {

// Linear program min c^T x subject to A x <= b, x >= 0, with A dense
// row-major.  Equality constraints are represented as paired inequalities.
struct LpInstance {
  std::size_t m = 0, n = 0;
  std::vector<double> A;  // m x n row-major
  std::vector<double> b;  // length m
  std::vector<double> c;  // length n
};

// Plain-text format: first line "m n", second line the n entries of c, then
// m lines each holding a row of A followed by b_i.
LpInstance load_lp(std::istream& in);
LpInstance load_lp(const std::string& path);
void save_lp(const LpInstance& inst, std::ostream& out);
void save_lp(const LpInstance& inst, const std::string& path);

// Random LP that is feasible and bounded by construction: b leaves slack
// around a random nonnegative point and c is dual-feasible.  Each equality
// row contributes a (row, -row) pair, so m = n_ineq + 2 * n_eq.
LpInstance make_synthetic_lp(std::size_t n_vars, std::size_t n_ineq,
                             std::size_t n_eq, std::uint64_t seed);

}  // namespace pdhg
