#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace locreg {

/// Runs one regcli command. args excludes the program name.
/// Exit codes: 0 success, 1 usage or input error, 2 numerical failure.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace locreg
