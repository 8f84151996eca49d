// SPDX-License-Identifier: Apache-2.0

/// \file
/// Command-line front end and its JSON run record.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace hardy {

inline constexpr const char* kVersion = "0.1.0";

/// One CLI invocation and its result.
struct RunRecord {
  std::string command;
  std::map<std::string, std::string> parameters;
  /// A {value, error_estimate, ...} object or a sharpness report.
  nlohmann::json result;
  double error_estimate = 0.0;
  std::uint64_t seed = 0;
  /// (absolute, relative).
  std::pair<double, double> tolerances{0.0, 0.0};
  std::string version = kVersion;
  /// Wall-clock time of the run; ignored by operator==.
  std::string timestamp;

  friend bool operator==(const RunRecord& a, const RunRecord& b);
};

nlohmann::json to_json(const RunRecord& r);
RunRecord run_record_from_json(const nlohmann::json& j);

/// JSON number that also survives inf / nan (encoded as strings).
nlohmann::json encode_number(double x);
double decode_number(const nlohmann::json& j);

enum ExitCode : int { kExitOk = 0, kExitVerdict = 1, kExitUsage = 2 };

/// Runs the CLI on `args` (without the program name), writing the JSON
/// record or CSV to `out` and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hardy
