#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace chaut::cli {

/// Runs one subcommand. Returns 0 on success, 1 on domain failures (with a
/// JSON error object on `err`), 2 on usage errors.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace chaut::cli
