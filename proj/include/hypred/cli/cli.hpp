#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "hypred/curves/curve.hpp"
#include "hypred/error.hpp"

namespace hypred::cli {

inline constexpr const char* kSchemaVersion = "1";

enum ExitCode : int {
  kOk = 0,
  kNoWitness = 1,
  kUsage = 2,
  kInvariant = 3,
  kUnsupportedField = 4,
};

int exit_code_for(Errc code);

/// Runs one command line (without the program name). Results go to `out`,
/// diagnostics to `err`; the return value is the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Exact serialization: roots and twist as "num/den" strings.
nlohmann::ordered_json curve_json(const curves::RosenhainCurve& curve);
/// Inverse of curve_json. Throws Error(Parse).
curves::RosenhainCurve curve_from_json(const nlohmann::ordered_json& j);

}  // namespace hypred::cli
