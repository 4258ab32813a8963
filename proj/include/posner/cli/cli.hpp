#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace posner::cli {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitUnknownPreset = 2;
inline constexpr int kExitConfig = 3;
inline constexpr int kExitNumeric = 4;

// args excludes the program name. Errors go to `err` as one line:
//   error kind=<usage|preset|config|numeric|io> msg="..."
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace posner::cli
