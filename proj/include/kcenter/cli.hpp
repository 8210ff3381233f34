#pragma once

namespace kcenter {

/// Entry point shared by the kcenter binary and the CLI tests.
/// Exit codes: 0 solved (gap met or queue exhausted), 2 time limit,
/// 1 usage or data errors.
int run_cli(int argc, const char* const* argv);

}  // namespace kcenter
