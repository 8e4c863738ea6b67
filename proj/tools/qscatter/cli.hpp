#pragma once

#include <string>
#include <vector>

namespace qscatter::cli {

/// Parses and dispatches one invocation. args excludes the program name.
/// Returns 0 on success, 1 on module/numerical errors (message on stderr,
/// verbatim), 2 on configuration errors.
int run(const std::vector<std::string>& args);

}  // namespace qscatter::cli
