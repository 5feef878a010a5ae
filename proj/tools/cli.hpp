#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ggism::cli {

/// Entry point shared by the binary and the tests. `args` excludes the
/// program name. Returns the process exit code: 0 on success, nonzero with a
/// machine-readable JSON error object on `err` otherwise.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ggism::cli
