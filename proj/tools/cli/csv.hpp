// Copyright 2026 The qfi-witness Authors
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

#include <filesystem>
#include <string>
#include <vector>

namespace qfiw_cli {

/// A table of pre-formatted cells. Cells never contain commas or newlines.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> cells);
    size_t column_index(const std::string &name) const;
    double number(size_t row, const std::string &column) const;
};

/// 17 significant digits, enough for any double to round-trip.
std::string format_number(double value);
std::string format_integer(long long value);

void write_csv(const std::filesystem::path &path, const Table &table);
Table read_csv(const std::filesystem::path &path);

}  // namespace qfiw_cli
