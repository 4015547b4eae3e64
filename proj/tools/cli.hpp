#pragma once

#include <ostream>

namespace infdelay::cli {

/// Entry point of the `infdelay` tool. Exit codes: 0 success, 1 verdict or
/// numeric failure, 2 input error.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace infdelay::cli
