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

#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace bitpact {

// Minimal reader/writer for the plain comma-separated files this project
// emits: no quoting, a header row, and optional trailing `# key=value`
// summary lines.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> comments;  // without the leading "# "

  // Index of `name` in the header; throws PreconditionError if absent.
  std::size_t column(std::string_view name) const;
  bool has_column(std::string_view name) const;
};

CsvTable read_csv(std::istream& is);
void write_csv(std::ostream& os, const CsvTable& table);

double parse_double(std::string_view text);
unsigned long long parse_unsigned(std::string_view text);

}  // namespace bitpact
