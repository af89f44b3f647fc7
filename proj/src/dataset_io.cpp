/*
 * Copyright 2026 The srt Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 */

#include "srt/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "srt/errors.hpp"

namespace srt {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

struct Table {
    std::vector<double> cells;
    std::size_t columns = 0;
    std::size_t rows = 0;
};

Table read_table(const std::filesystem::path& path, bool has_header) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path.string() + "'");
    Table table;
    std::string line;
    std::size_t line_no = 0;
    bool header_pending = has_header;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view view = trim(line);
        if (view.empty()) continue;
        if (header_pending) {
            header_pending = false;
            continue;
        }
        std::size_t col = 0;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = view.find(',', start);
            const std::string_view cell =
                trim(view.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
            double value = 0.0;
            const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
            if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size())
                throw FormatError(path.string() + ": line " + std::to_string(line_no) + ", column " +
                                  std::to_string(col + 1) + ": not a number: '" + std::string(cell) + "'");
            table.cells.push_back(value);
            ++col;
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        if (table.rows == 0) {
            table.columns = col;
        } else if (col != table.columns) {
            throw FormatError(path.string() + ": line " + std::to_string(line_no) + " has " + std::to_string(col) +
                              " columns, expected " + std::to_string(table.columns));
        }
        ++table.rows;
    }
    if (table.rows == 0) throw FormatError(path.string() + ": no data rows");
    return table;
}

Dataset split_table(const Table& table, std::size_t dim, bool with_target) {
    Dataset ds;
    ds.points = PointSet(dim);
    ds.points.reserve(table.rows);
    if (with_target) ds.values.reserve(table.rows);
    for (std::size_t r = 0; r < table.rows; ++r) {
        const double* row = table.cells.data() + r * table.columns;
        ds.points.push_back({row, dim});
        if (with_target) ds.values.push_back(row[dim]);
    }
    return ds;
}

} // namespace

std::string format_real(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

void Dataset::check_consistent() const {
    if (points.size() != values.size())
        throw DataError("dataset has " + std::to_string(points.size()) + " points but " +
                        std::to_string(values.size()) + " values");
    for (double v : points.coords())
        if (!std::isfinite(v)) throw DataError("dataset contains a non-finite coordinate");
    for (double v : values)
        if (!std::isfinite(v)) throw DataError("dataset contains a non-finite value");
}

void Dataset::check_distinct() const {
    const std::size_t n = points.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto less = [&](std::size_t a, std::size_t b) {
        auto pa = points[a];
        auto pb = points[b];
        if (std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end())) return true;
        if (std::equal(pa.begin(), pa.end(), pb.begin())) return a < b;
        return false;
    };
    std::sort(order.begin(), order.end(), less);
    for (std::size_t i = 1; i < n; ++i) {
        auto pa = points[order[i - 1]];
        auto pb = points[order[i]];
        if (std::equal(pa.begin(), pa.end(), pb.begin()))
            throw DataError("duplicate point at rows " + std::to_string(order[i - 1] + 1) + " and " +
                            std::to_string(order[i] + 1));
    }
}

Dataset load_csv(const std::filesystem::path& path, bool has_header) {
    const Table table = read_table(path, has_header);
    if (table.columns < 2) throw FormatError(path.string() + ": need at least one coordinate column and a target");
    Dataset ds = split_table(table, table.columns - 1, true);
    ds.provenance = path.string();
    ds.check_consistent();
    ds.check_distinct();
    return ds;
}

Dataset load_points_csv(const std::filesystem::path& path, bool has_header, std::size_t dim, bool& has_target) {
    const Table table = read_table(path, has_header);
    if (table.columns == dim) {
        has_target = false;
    } else if (table.columns == dim + 1) {
        has_target = true;
    } else {
        throw FormatError(path.string() + ": expected " + std::to_string(dim) + " or " + std::to_string(dim + 1) +
                          " columns, found " + std::to_string(table.columns));
    }
    Dataset ds = split_table(table, dim, has_target);
    ds.provenance = path.string();
    return ds;
}

void save_csv(const Dataset& dataset, const std::filesystem::path& path) {
    dataset.check_consistent();
    std::ofstream out(path);
    if (!out) throw DataError("cannot write '" + path.string() + "'");
    const std::size_t d = dataset.dim();
    for (std::size_t k = 0; k < d; ++k) out << 'x' << (k + 1) << ',';
    out << "f\n";
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        for (double v : dataset.points[i]) out << format_real(v) << ',';
        out << format_real(dataset.values[i]) << '\n';
    }
    if (!out) throw DataError("write failed for '" + path.string() + "'");
}

} // namespace srt
