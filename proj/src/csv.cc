// Copyright 2026 The bitpact Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bitpact/csv.h"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>

#include "bitpact/error.h"

namespace bitpact {

namespace {

std::vector<std::string> split(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    out.emplace_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

std::size_t CsvTable::column(std::string_view name) const {
  auto it = std::find(header.begin(), header.end(), name);
  require(it != header.end(), "CSV has no column '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - header.begin());
}

bool CsvTable::has_column(std::string_view name) const {
  return std::find(header.begin(), header.end(), name) != header.end();
}

CsvTable read_csv(std::istream& is) {
  CsvTable table;
  std::string line;
  bool have_header = false;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::string_view body(line);
      body.remove_prefix(1);
      if (!body.empty() && body[0] == ' ') body.remove_prefix(1);
      table.comments.emplace_back(body);
      continue;
    }
    auto fields = split(line);
    if (!have_header) {
      table.header = std::move(fields);
      have_header = true;
      continue;
    }
    require(fields.size() == table.header.size(),
            "CSV row has " + std::to_string(fields.size()) + " fields, header has " +
                std::to_string(table.header.size()));
    table.rows.push_back(std::move(fields));
  }
  require(have_header, "CSV input has no header row");
  return table;
}

void write_csv(std::ostream& os, const CsvTable& table) {
  auto emit = [&os](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) os << ',';
      os << fields[i];
    }
    os << '\n';
  };
  emit(table.header);
  for (const auto& row : table.rows) emit(row);
  for (const auto& c : table.comments) os << "# " << c << '\n';
}

double parse_double(std::string_view text) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  require(ec == std::errc() && ptr == text.data() + text.size(),
          "not a number: '" + std::string(text) + "'");
  return value;
}

unsigned long long parse_unsigned(std::string_view text) {
  unsigned long long value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  require(!text.empty() && ec == std::errc() && ptr == text.data() + text.size(),
          "not a nonnegative integer: '" + std::string(text) + "'");
  return value;
}

}  // namespace bitpact
