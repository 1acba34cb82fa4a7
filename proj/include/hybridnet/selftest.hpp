#pragma once

#include <string>

namespace hybridnet::selftest {

/// Run the full acceptance suite, printing one PASS/FAIL line per criterion.
/// cli_path, when non-empty, is the runner binary used for the end-to-end
/// reproducibility check; when empty that check runs in-process.
/// Returns 0 if every criterion passed, 1 otherwise.
int run_selftest(const std::string& cli_path);

}  // namespace hybridnet::selftest
