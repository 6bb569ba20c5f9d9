#pragma once

namespace mazeplan {

// Entry point behind the `mazeplan` binary; also callable in-process from
// tests. Returns the process exit code: 0 success, 1 planner failure,
// 2 usage error.
int run_cli(int argc, const char* const* argv);

}  // namespace mazeplan
