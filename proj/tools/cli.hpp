#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace flipdist::cli {

inline constexpr unsigned long long kDefaultSeed = 20240607;

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitBudget = 2;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitInternal = 70;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace flipdist::cli
