#pragma once

// In-process entry point for the command-line tool.  `args` excludes the
// program name.  Writes documents to `out`, error records to `err`, and
// returns the process exit code: 0 success, 2 validation/IO error,
// 3 capacity error, 4 discrepancy.

#include <iosfwd>
#include <string>
#include <vector>

namespace sampex::cli {

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

} // namespace sampex::cli
