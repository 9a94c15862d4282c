#pragma once

// Shared helpers for the test suite: step-condition auditing done
// independently of the library's own diagnostics, residual-window checks,
// and small process/file utilities for exercising the command-line tool.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pdhg/solver.hpp"

namespace support {

struct StepAudit {
  bool product_constant = true;   // tau*sigma bitwise equal across records
  bool alpha_decay_ok = true;     // phi accounting consistent with eta decay
  double sum_phi = 0.0;           // total balancing activity
  double phi_bound = 0.0;         // alpha0 / (1 - eta)
  int backtrack_events = 0;
  std::optional<std::size_t> last_backtrack_index;
};

// Recomputes, straight from the trace, what the stepsize rules guarantee.
// Balancing changes tau while pinning the product, and each change spends
// phi = alpha_current before alpha decays by eta, so the total spend is a
// geometric series bounded by alpha0 / (1 - eta).
inline StepAudit audit_stepsizes(const pdhg::SolverTrace& trace,
                                 double alpha0 = 0.5, double eta = 0.95) {
  StepAudit audit;
  audit.phi_bound = alpha0 / (1.0 - eta);
  if (trace.records.empty()) return audit;
  const double product0 = trace.records.front().tau * trace.records.front().sigma;
  double alpha = alpha0;
  double prev_tau = trace.records.front().tau;
  for (std::size_t i = 0; i < trace.records.size(); ++i) {
    const auto& rec = trace.records[i];
    if (rec.backtracked) {
      ++audit.backtrack_events;
      audit.last_backtrack_index = i;
      prev_tau = rec.tau;
      continue;
    }
    if (rec.tau * rec.sigma != product0) audit.product_constant = false;
    if (i > 0 && rec.tau != prev_tau) {
      audit.sum_phi += alpha;
      alpha *= eta;
    }
    prev_tau = rec.tau;
  }
  if (!(audit.sum_phi <= audit.phi_bound)) audit.alpha_decay_ok = false;
  return audit;
}

// Combined residual of each accepted record, skipping rejected trials.
inline std::vector<double> accepted_residuals(const pdhg::SolverTrace& trace) {
  std::vector<double> out;
  for (const auto& rec : trace.records) {
    if (rec.backtracked) continue;
    if (rec.p && rec.d) out.push_back(*rec.p + *rec.d);
  }
  return out;
}

// Minimum of the combined residual over consecutive windows.  The adaptive
// schemes oscillate within a window but the per-window floor must sink.
inline std::vector<double> window_minima(const std::vector<double>& series,
                                         std::size_t window) {
  std::vector<double> out;
  for (std::size_t start = 0; start + window <= series.size(); start += window) {
    double m = series[start];
    for (std::size_t i = start + 1; i < start + window; ++i)
      m = std::min(m, series[i]);
    out.push_back(m);
  }
  return out;
}

inline bool nonincreasing(const std::vector<double>& xs, double slack = 0.0) {
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (xs[i] > xs[i - 1] + slack) return false;
  return true;
}

// ---- process / filesystem glue for the CLI tests ----

struct ProcResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr interleaved
};

inline ProcResult run_process(const std::string& command) {
  ProcResult res;
  std::string tmp = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                    "/pdhg_test_out_" + std::to_string(::rand()) + ".txt";
  std::string full = command + " > " + tmp + " 2>&1";
  int rc = std::system(full.c_str());
  res.exit_code = (rc == -1) ? -1 : WEXITSTATUS(rc);
  std::ifstream in(tmp);
  std::stringstream ss;
  ss << in.rdbuf();
  res.output = ss.str();
  std::remove(tmp.c_str());
  return res;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline bool file_exists(const std::string& path) {
  std::ifstream in(path);
  return in.good();
}

inline void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  out << body;
}

// Splits CSV text into lines, dropping a trailing empty line.
inline std::vector<std::string> csv_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) lines.push_back(line);
  return lines;
}

// Extracts one named column from CSV text (header row required).
inline std::vector<std::string> csv_column(const std::string& text,
                                           const std::string& name) {
  auto lines = csv_lines(text);
  if (lines.empty()) return {};
  std::vector<std::string> header;
  {
    std::stringstream hs(lines[0]);
    std::string cell;
    while (std::getline(hs, cell, ',')) header.push_back(cell);
  }
  std::size_t col = header.size();
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) col = i;
  std::vector<std::string> out;
  if (col == header.size()) return out;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    std::stringstream rs(lines[r]);
    std::string cell;
    std::size_t idx = 0;
    while (std::getline(rs, cell, ',')) {
      if (idx == col) out.push_back(cell);
      ++idx;
    }
    if (idx <= col) out.push_back("");
  }
  return out;
}

}  // namespace support
