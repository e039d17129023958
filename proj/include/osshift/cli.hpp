#pragma once

#include <string>
#include <vector>

namespace osshift::cli {

/// Runs the command line given argv-style arguments (excluding the
/// program name). Returns 0 on success/pass, 1 on verification failure,
/// 2 on usage or validation errors.
int run(const std::vector<std::string>& args);

}  // namespace osshift::cli
