#pragma once

#include <iosfwd>
#include <string>

#include "pdhg/solver.hpp"

namespace pdhg {

// Header "iter,tau,sigma,p,d,b,backtracked,objective", one row per trace
// record, LF line endings, '.' decimal separator, %.17g doubles.  Fields
// that were not computed for a record are left empty.
void write_trace_csv(const SolverTrace& trace, std::ostream& out);
void write_trace_csv(const SolverTrace& trace, const std::string& path);

}  // namespace pdhg
