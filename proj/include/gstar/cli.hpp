#pragma once

#include <iosfwd>

namespace gstar {

// Full command-line surface. Results go to out as JSON; diagnostics go to
// err as JSON lines. Returns the process exit code: 0 success, 2 validation
// error, 3 certification failure, 4 tolerance unreachable, 1 otherwise.
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace gstar
