#pragma once

#include <iosfwd>

namespace gesp {

/// Exit codes: 0 success, 1 usage or config error, 2 runtime error.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gesp
