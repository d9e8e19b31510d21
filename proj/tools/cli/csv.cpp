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

#include "csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qfiw_cli {

void Table::add_row(std::vector<std::string> cells) {
    if (cells.size() != columns.size()) {
        throw std::logic_error("Table::add_row: cell count does not match the header");
    }
    rows.push_back(std::move(cells));
}

size_t Table::column_index(const std::string &name) const {
    for (size_t i = 0; i < columns.size(); ++i) {
        if (columns[i] == name) {
            return i;
        }
    }
    throw std::out_of_range("table has no column '" + name + "'");
}

double Table::number(size_t row, const std::string &column) const {
    return std::stod(rows.at(row).at(column_index(column)));
}

std::string format_number(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

std::string format_integer(long long value) { return std::to_string(value); }

void write_csv(const std::filesystem::path &path, const Table &table) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error(path.string() + ": cannot open for writing");
    }
    auto line = [&out](const std::vector<std::string> &cells) {
        for (size_t i = 0; i < cells.size(); ++i) {
            out << (i ? "," : "") << cells[i];
        }
        out << '\n';
    };
    line(table.columns);
    for (const auto &row : table.rows) {
        line(row);
    }
    if (!out.flush()) {
        throw std::runtime_error(path.string() + ": write failed");
    }
}

Table read_csv(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error(path.string() + ": cannot open for reading");
    }
    auto split = [](const std::string &text) {
        std::vector<std::string> cells;
        std::stringstream stream(text);
        std::string cell;
        while (std::getline(stream, cell, ',')) {
            cells.push_back(cell);
        }
        if (!text.empty() && text.back() == ',') {
            cells.emplace_back();
        }
        return cells;
    };
    Table table;
    std::string text;
    if (!std::getline(in, text)) {
        throw std::runtime_error(path.string() + ": empty CSV file");
    }
    table.columns = split(text);
    while (std::getline(in, text)) {
        if (text.empty()) {
            continue;
        }
        auto cells = split(text);
        if (cells.size() != table.columns.size()) {
            throw std::runtime_error(path.string() + ": ragged CSV row");
        }
        table.rows.push_back(std::move(cells));
    }
    return table;
}

}  // namespace qfiw_cli
