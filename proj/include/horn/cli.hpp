#pragma once

namespace horn {

/// Full command-line driver. Exit codes: 0 success, 1 I/O failure,
/// 2 usage / out-of-scope request, 3 invariant-suite failure.
int run_cli(int argc, const char* const* argv);

}  // namespace horn
