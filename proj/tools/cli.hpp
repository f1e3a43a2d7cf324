#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace easyvoice::cli {

/// Entry point for the easyvoice tool; args excludes the program name.
/// Returns 0 on success, 1 on startup/runtime failure, 2 on bad usage.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace easyvoice::cli
