#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dsp6::cli {

/// Entry point shared by the executable and the tests. args[0] is the program name.
/// Exit codes: 0 ok, 1 verification failure, 2 flagged partial run, 3 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dsp6::cli
