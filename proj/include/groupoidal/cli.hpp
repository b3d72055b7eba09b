#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace groupoidal::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitInputError = 2;

/// Runs one command line (without the program name). Every check writes a
/// JSON report to `out`, including failures and input errors; --pretty adds
/// a table on `err`. --help prints usage to `out`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace groupoidal::cli
