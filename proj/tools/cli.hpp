#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace slicelab::cli {

/// Runs one `slicelab` invocation. Exit codes: 0 success, 1 a library error
/// (reported as one JSON line {"error": kind, "detail": ...} on err), 2 a
/// usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace slicelab::cli
