// Copyright (c) 2026 The gazelab Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace gazelab::csv {

using Row = std::vector<std::string>;

/// A header plus data rows. Fields may be double-quoted; quotes inside a
/// quoted field are doubled.
struct Table {
  Row header;
  std::vector<Row> rows;

  /// Index of a header column; throws ValidationError when absent.
  std::size_t column(std::string_view name) const;
};

Row split_line(std::string_view line, std::size_t line_no);
Table read(std::istream& in);
Table read_file(const std::string& path);

std::string escape(std::string_view field);
void write_row(std::ostream& out, const Row& row);

/// Shortest decimal form that round-trips to the same double.
std::string format_double(double value);

double parse_double(std::string_view text, std::size_t line_no);
long long parse_int(std::string_view text, std::size_t line_no);

}  // namespace gazelab::csv
