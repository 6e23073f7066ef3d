#pragma once

#include <iosfwd>

namespace braces::cli {

  // Exit codes: 0 success, 1 check failure, 2 usage or precondition error.
  int run_cli(int argc, char const* const* argv, std::ostream& out, std::ostream& err);

}  // namespace braces::cli
