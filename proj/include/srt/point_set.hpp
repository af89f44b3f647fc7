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

#include <cstddef>
#include <span>
#include <vector>

namespace srt {

/**
 * N points in d dimensions, stored row-major.
 */
class PointSet {
public:
    PointSet() = default;
    explicit PointSet(std::size_t dim);
    PointSet(std::size_t count, std::size_t dim);
    PointSet(std::vector<double> coords, std::size_t dim);

    std::size_t size() const { return dim_ == 0 ? 0 : coords_.size() / dim_; }
    std::size_t dim() const { return dim_; }
    bool empty() const { return coords_.empty(); }

    std::span<const double> operator[](std::size_t i) const {
        return {coords_.data() + i * dim_, dim_};
    }
    std::span<double> operator[](std::size_t i) {
        return {coords_.data() + i * dim_, dim_};
    }

    void push_back(std::span<const double> point);
    void reserve(std::size_t count) { coords_.reserve(count * dim_); }

    /// Rows selected by `rows`, in that order.
    PointSet select(std::span<const std::size_t> rows) const;

    /// Coordinate-wise mean of all rows, accumulated in row order.
    std::vector<double> mean() const;

    const std::vector<double>& coords() const { return coords_; }

private:
    std::vector<double> coords_;
    std::size_t dim_ = 0;
};

double squared_distance(std::span<const double> a, std::span<const double> b);
double distance(std::span<const double> a, std::span<const double> b);
double dot(std::span<const double> a, std::span<const double> b);

} // namespace srt
