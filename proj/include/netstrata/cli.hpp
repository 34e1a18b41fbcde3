#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace netstrata::cli {

// Entry point shared by the netstrata binary and in-process callers; `args`
// excludes the program name. Returns the process exit code. Failures write a
// single {"error": {"code", "message"}} object to `err` and return 1.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args);

}  // namespace netstrata::cli
