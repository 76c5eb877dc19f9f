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

// RFC 4180 CSV: header row, CRLF line endings, numbers as %.12g.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "gicirc/noise_fit.hpp"

namespace gicirc {

std::string format_number(double value);

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void header(const std::vector<std::string>& names);
  void row(const std::vector<double>& values);
  void row_text(const std::vector<std::string>& fields);

 private:
  std::ostream& out_;
};

/// Columns qng1_db,qng2_db,advantage_db[,sigma_db] in that order, with a
/// header row. Throws kParse naming the offending line.
std::vector<AdvantagePoint> read_advantage_csv(std::istream& in);

}  // namespace gicirc
