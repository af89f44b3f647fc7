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

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "srt/point_set.hpp"

namespace srt {

/// Scattered samples (X, f_X).
struct Dataset {
    PointSet points;
    std::vector<double> values;
    std::string provenance;

    std::size_t size() const { return values.size(); }
    std::size_t dim() const { return points.dim(); }

    /// Lengths match and every entry is finite. Throws DataError otherwise.
    void check_consistent() const;
    /// Throws DataError naming both rows (1-based) of the first duplicated point.
    void check_distinct() const;
};

/// Reads `d+1` numeric columns per row, the last being the target.
Dataset load_csv(const std::filesystem::path& path, bool has_header);

/// Reads rows of exactly `dim` or `dim+1` columns; `has_target` reports which.
Dataset load_points_csv(const std::filesystem::path& path, bool has_header, std::size_t dim, bool& has_target);

/// Writes a header line `x1,...,xd,f` and 17-significant-digit values.
void save_csv(const Dataset& dataset, const std::filesystem::path& path);

/// 17 significant digits, the shortest width that round-trips every double.
std::string format_real(double value);

} // namespace srt
