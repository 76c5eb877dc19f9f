// Copyright 2026 The gicirc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Command-line front end. `run` is the whole program minus process setup so
// tests can drive it with string streams.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include "json.hpp"

namespace gicirc::cli {

inline constexpr std::string_view kResultSchema = "gicirc-result/1";

enum ExitCode : int { kOk = 0, kDomainError = 1, kUsageError = 2 };

/// JSON result envelope. `command` echoes the resolved parameters, so two
/// documents with equal commands came from equivalent invocations.
struct ResultDoc {
  std::string schema_version{kResultSchema};
  nlohmann::ordered_json command = nlohmann::ordered_json::object();
  nlohmann::ordered_json outputs = nlohmann::ordered_json::object();
  std::string parameter_hash;  // fnv1a64 of command.dump(), 16 hex digits
  std::string version;

  nlohmann::ordered_json to_json() const;
  /// Throws gicirc::Error(kParse) on a malformed document.
  static ResultDoc from_json(const nlohmann::ordered_json& doc);

  bool operator==(const ResultDoc&) const = default;
};

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t value);

/// Parses argv (argv[0] is the program name), writes the result to `out` or
/// to the -o file, and errors as {"error": {"kind", "message"}} to `err`.
/// `in` backs `--circuit -` and `--data -`.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace gicirc::cli
