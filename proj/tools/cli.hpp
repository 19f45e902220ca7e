#pragma once

#include <iosfwd>

namespace hkdsho::cli {

/// Entry point of the `hkdsho` tool. Exit 0 on success, 1 on a runtime
/// failure, 2 on a usage error.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hkdsho::cli
