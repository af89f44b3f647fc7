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

#include "srt/point_set.hpp"
#include "srt/rng.hpp"

namespace srt {

/// Halton points with indices 1..count; coordinate k uses the k-th prime as base.
/// Supports dim <= 16.
PointSet halton_sequence(std::size_t count, std::size_t dim);

/// Radical inverse of `index` in `base`.
double radical_inverse(std::uint64_t index, std::uint32_t base);

/**
 * Draws n_sub distinct indices from [0, n_total) uniformly (partial
 * Fisher-Yates shuffle). n_sub is clamped to n_total.
 */
std::vector<std::size_t> random_index_subset(std::size_t n_total, std::size_t n_sub, Rng& rng);

enum class StartRule { MeanNearest, MeanFarthest };

/**
 * Farthest-point (quasi-uniform) selection over a point set together with the
 * Voronoi labelling of every point by its nearest selected point.
 *
 * Ties in every arg-max / arg-min resolve to the smallest index.
 */
struct QuasiUniformState {
    std::vector<std::size_t> selected;       ///< row indices, in selection order
    std::vector<std::size_t> nearest_label;  ///< per row: position in `selected`
    std::vector<double> nearest_dist;        ///< per row: Euclidean distance to that point
    std::vector<double> sep_history;         ///< max-min distance at each farthest-point step
    bool capped = false;                     ///< a target larger than N was requested

    std::vector<double> nearest_sq;          ///< squared distances backing nearest_dist
};

QuasiUniformState quasi_uniform_extend(const PointSet& points,
                                       std::span<const std::size_t> seed_indices,
                                       std::size_t target_count, StartRule start_rule);

/// Continues farthest-point selection on an existing state up to target_count points.
void quasi_uniform_grow(QuasiUniformState& state, const PointSet& points, std::size_t target_count);

/// Row whose distance to the coordinate mean is smallest (MeanNearest) or largest.
std::size_t mean_anchor(const PointSet& points, StartRule rule);

/**
 * Monte Carlo lower estimate of the fill distance inside the box [lo, hi]:
 * the largest nearest-data-point distance over n_probe uniform probes.
 */
double estimate_fill_distance(const PointSet& points, std::span<const double> box_lo,
                              std::span<const double> box_hi, std::size_t n_probe, Rng& rng);

} // namespace srt
