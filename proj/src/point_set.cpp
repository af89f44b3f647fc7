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

#include "srt/point_set.hpp"

#include <cmath>

#include "srt/errors.hpp"

namespace srt {

PointSet::PointSet(std::size_t dim) : dim_(dim) {
    if (dim == 0) throw InvalidArgument("PointSet: dimension must be positive");
}

PointSet::PointSet(std::size_t count, std::size_t dim) : coords_(count * dim, 0.0), dim_(dim) {
    if (dim == 0) throw InvalidArgument("PointSet: dimension must be positive");
}

PointSet::PointSet(std::vector<double> coords, std::size_t dim)
    : coords_(std::move(coords)), dim_(dim) {
    if (dim == 0) throw InvalidArgument("PointSet: dimension must be positive");
    if (coords_.size() % dim != 0)
        throw InvalidArgument("PointSet: coordinate count is not a multiple of the dimension");
}

void PointSet::push_back(std::span<const double> point) {
    if (point.size() != dim_) throw InvalidArgument("PointSet::push_back: dimension mismatch");
    coords_.insert(coords_.end(), point.begin(), point.end());
}

PointSet PointSet::select(std::span<const std::size_t> rows) const {
    PointSet out(dim_);
    out.coords_.reserve(rows.size() * dim_);
    for (std::size_t r : rows) out.push_back((*this)[r]);
    return out;
}

std::vector<double> PointSet::mean() const {
    std::vector<double> m(dim_, 0.0);
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i) {
        auto p = (*this)[i];
        for (std::size_t k = 0; k < dim_; ++k) m[k] += p[k];
    }
    if (n > 0)
        for (double& v : m) v /= static_cast<double>(n);
    return m;
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double t = a[k] - b[k];
        s += t * t;
    }
    return s;
}

double distance(std::span<const double> a, std::span<const double> b) {
    return std::sqrt(squared_distance(a, b));
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

} // namespace srt
