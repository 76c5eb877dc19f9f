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

#include "gicirc/csv.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>

#include <fmt/format.h>

#include "gicirc/error.hpp"

namespace gicirc {
namespace {

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_double(std::string_view s, std::size_t line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorKind::kParse, fmt::format("line {}: \"{}\" is not a number", line, s));
  }
  return v;
}

}  // namespace

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

void CsvWriter::header(const std::vector<std::string>& names) { row_text(names); }

void CsvWriter::row(const std::vector<double>& values) {
  std::vector<std::string> fields;
  fields.reserve(values.size());
  for (double v : values) fields.push_back(format_number(v));
  row_text(fields);
}

void CsvWriter::row_text(const std::vector<std::string>& fields) {
  for (std::size_t k = 0; k < fields.size(); ++k) {
    if (k > 0) out_ << ',';
    out_ << escape(fields[k]);
  }
  out_ << "\r\n";
}

std::vector<AdvantagePoint> read_advantage_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  bool has_sigma = false;
  std::vector<AdvantagePoint> out;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = trim(line);
    if (view.empty()) continue;
    const auto fields = split(view);
    if (!have_header) {
      const bool base = fields.size() >= 3 && fields[0] == "qng1_db" && fields[1] == "qng2_db" &&
                        fields[2] == "advantage_db";
      has_sigma = fields.size() == 4 && fields[3] == "sigma_db";
      if (!base || (fields.size() == 4 && !has_sigma) || fields.size() > 4) {
        throw Error(ErrorKind::kParse,
                    fmt::format("line {}: header must be qng1_db,qng2_db,advantage_db[,sigma_db]",
                                line_no));
      }
      have_header = true;
      continue;
    }
    const std::size_t expected = has_sigma ? 4 : 3;
    if (fields.size() != expected) {
      throw Error(ErrorKind::kParse,
                  fmt::format("line {}: expected {} columns, got {}", line_no, expected,
                              fields.size()));
    }
    AdvantagePoint pt;
    pt.qng1_db = parse_double(fields[0], line_no);
    pt.qng2_db = parse_double(fields[1], line_no);
    pt.advantage_db = parse_double(fields[2], line_no);
    if (has_sigma) pt.sigma_db = parse_double(fields[3], line_no);
    out.push_back(pt);
  }
  if (!have_header) throw Error(ErrorKind::kParse, "empty CSV: missing header row");
  return out;
}

}  // namespace gicirc
