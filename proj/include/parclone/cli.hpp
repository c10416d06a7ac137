#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace parclone::cli {

// Exit codes: 0 success/pass, 1 failed check or a negative answer under
// --assert, 2 usage/parse/corrupt-cache error, 3 resource limit.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace parclone::cli
