#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pasv::cli {

/// Runs one CLI command. Exit status: 0 passive / success, 1 non-passive,
/// 2 usage or runtime error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace pasv::cli
