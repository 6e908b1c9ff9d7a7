#pragma once

#include <ostream>

namespace ahs {

/// Exit status: 0 success, 1 computational contract failure, 2 input error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ahs
