#include "pdhg/lp.hpp"

#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace pdhg {

namespace {

[[noreturn]] void parse_fail(int line, const std::string& what) {
  throw std::runtime_error("load_lp: line " + std::to_string(line) + ": " + what);
}

std::vector<double> parse_reals(const std::string& text, std::size_t expected,
                                int line) {
  std::istringstream ss(text);
  std::vector<double> vals;
  double v;
  while (ss >> v) vals.push_back(v);
  if (!ss.eof()) parse_fail(line, "not a number");
  if (vals.size() != expected)
    parse_fail(line, "expected " + std::to_string(expected) + " values, got " +
                         std::to_string(vals.size()));
  return vals;
}

std::string next_content_line(std::istream& in, int& line) {
  std::string text;
  while (std::getline(in, text)) {
    ++line;
    if (text.find_first_not_of(" \t\r") != std::string::npos) return text;
  }
  parse_fail(line + 1, "unexpected end of file");
}

}  // namespace

LpInstance load_lp(std::istream& in) {
  int line = 0;
  std::string text = next_content_line(in, line);
  std::istringstream head(text);
  long long m = -1, n = -1;
  head >> m >> n;
  if (!head || m <= 0 || n <= 0) parse_fail(line, "expected positive \"m n\"");
  LpInstance inst;
  inst.m = static_cast<std::size_t>(m);
  inst.n = static_cast<std::size_t>(n);
  inst.c = parse_reals(next_content_line(in, line), inst.n, line);
  inst.A.reserve(inst.m * inst.n);
  inst.b.reserve(inst.m);
  for (std::size_t i = 0; i < inst.m; ++i) {
    std::vector<double> row = parse_reals(next_content_line(in, line), inst.n + 1, line);
    inst.A.insert(inst.A.end(), row.begin(), row.end() - 1);
    inst.b.push_back(row.back());
  }
  return inst;
}

LpInstance load_lp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_lp: cannot open " + path);
  return load_lp(in);
}

void save_lp(const LpInstance& inst, std::ostream& out) {
  out << inst.m << " " << inst.n << "\n";
  char buf[32];
  auto put = [&](double v, char sep) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf << sep;
  };
  for (std::size_t j = 0; j < inst.n; ++j) put(inst.c[j], j + 1 < inst.n ? ' ' : '\n');
  for (std::size_t i = 0; i < inst.m; ++i) {
    for (std::size_t j = 0; j < inst.n; ++j) put(inst.A[i * inst.n + j], ' ');
    put(inst.b[i], '\n');
  }
}

void save_lp(const LpInstance& inst, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("save_lp: cannot open " + path);
  save_lp(inst, out);
}

LpInstance make_synthetic_lp(std::size_t n_vars, std::size_t n_ineq,
                             std::size_t n_eq, std::uint64_t seed) {
  if (n_vars == 0 || n_ineq + n_eq == 0)
    throw std::invalid_argument("make_synthetic_lp: empty program");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> entry(-1.0, 1.0);
  std::uniform_real_distribution<double> point(0.0, 2.0);
  std::uniform_real_distribution<double> slack(0.1, 1.1);
  std::uniform_real_distribution<double> dual(0.0, 1.0);

  LpInstance inst;
  inst.n = n_vars;
  inst.m = n_ineq + 2 * n_eq;
  inst.A.resize(inst.m * inst.n);
  inst.b.resize(inst.m);
  inst.c.assign(inst.n, 0.0);

  std::vector<double> x0(n_vars);
  for (double& v : x0) v = point(rng);

  for (std::size_t i = 0; i < n_ineq; ++i) {
    double dot = 0.0;
    for (std::size_t j = 0; j < n_vars; ++j) {
      double a = entry(rng);
      inst.A[i * n_vars + j] = a;
      dot += a * x0[j];
    }
    inst.b[i] = dot + slack(rng);
  }
  for (std::size_t e = 0; e < n_eq; ++e) {
    const std::size_t i = n_ineq + 2 * e;
    double dot = 0.0;
    for (std::size_t j = 0; j < n_vars; ++j) {
      double a = entry(rng);
      inst.A[i * n_vars + j] = a;
      inst.A[(i + 1) * n_vars + j] = -a;
      dot += a * x0[j];
    }
    inst.b[i] = dot;
    inst.b[i + 1] = -dot;
  }

  // c = -A^T y0 + delta with y0, delta >= 0 keeps the dual feasible, so the
  // program is bounded.
  std::vector<double> y0(inst.m);
  for (double& v : y0) v = dual(rng);
  for (std::size_t j = 0; j < n_vars; ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < inst.m; ++i) acc += inst.A[i * n_vars + j] * y0[i];
    inst.c[j] = -acc + dual(rng);
  }
  return inst;
}

}  // namespace pdhg
