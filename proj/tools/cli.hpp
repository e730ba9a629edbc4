#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pointint::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;

/// Runs one command. `args` excludes the program name. Results go to `out`
/// as a single JSON document or CSV table; failures go to `err` as
/// {"error": {"kind", "detail"}}.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pointint::cli
