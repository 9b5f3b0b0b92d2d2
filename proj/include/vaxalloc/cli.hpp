#pragma once

#include <iosfwd>

namespace vaxalloc {

// Entry point of the `vaxalloc` tool. Returns 0 on success (an INFEASIBLE
// plan is a successful answer), 1 on domain errors and 2 on usage errors.
// Log verbosity comes from VAXALLOC_LOG_LEVEL (trace, debug, info, warn,
// error, off; default warn) and goes to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vaxalloc
