#pragma once

#include <iosfwd>

namespace cgraph {

/// Exit codes: 0 success, 1 failure (malformed input, scoring divergence),
/// 2 usage error or unknown id, 3 inapplicable operation, 4 port unavailable.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cgraph
