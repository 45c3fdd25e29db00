#pragma once

#include <string>
#include <vector>

namespace lpdmt {

/// Entry point behind the lpdmt binary. args excludes argv[0].
/// Returns 0 on success, nonzero with a diagnostic on stderr otherwise.
int cli_main(const std::vector<std::string>& args);

}  // namespace lpdmt
