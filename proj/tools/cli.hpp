#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace abshift::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 2;         // bad flags, domain or precondition failures
inline constexpr int kResource = 3;      // enumeration or sample budget exceeded
inline constexpr int kVerification = 4;  // construction or verification failure

// Runs one command line (args[0] is the program name). Records go to `out`
// unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace abshift::cli
