#include "pdhg/trace_csv.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace pdhg {

namespace {

void put_double(std::ostream& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out << buf;
}

void put_optional(std::ostream& out, const std::optional<double>& v) {
  if (v) put_double(out, *v);
}

}  // namespace

void write_trace_csv(const SolverTrace& trace, std::ostream& out) {
  out << "iter,tau,sigma,p,d,b,backtracked,objective\n";
  for (const TraceRecord& r : trace.records) {
    out << r.iter << ',';
    put_double(out, r.tau);
    out << ',';
    put_double(out, r.sigma);
    out << ',';
    put_optional(out, r.p);
    out << ',';
    put_optional(out, r.d);
    out << ',';
    put_optional(out, r.b);
    out << ',' << (r.backtracked ? 1 : 0) << ',';
    put_optional(out, r.objective);
    out << '\n';
  }
}

void write_trace_csv(const SolverTrace& trace, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_trace_csv: cannot open " + path);
  write_trace_csv(trace, out);
  if (!out) throw std::runtime_error("write_trace_csv: write failed for " + path);
}

}  // namespace pdhg
