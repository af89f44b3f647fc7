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

#include "srt/sampling.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "srt/errors.hpp"

namespace srt {

namespace {

constexpr std::array<std::uint32_t, 16> kPrimes = {2,  3,  5,  7,  11, 13, 17, 19,
                                                   23, 29, 31, 37, 41, 43, 47, 53};

constexpr std::size_t kNoLabel = std::numeric_limits<std::size_t>::max();

void add_selected(QuasiUniformState& state, const PointSet& points, std::size_t row) {
    const std::size_t label = state.selected.size();
    state.selected.push_back(row);
    const auto anchor = points[row];
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double d2 = squared_distance(points[i], anchor);
        if (d2 < state.nearest_sq[i]) {
            state.nearest_sq[i] = d2;
            state.nearest_dist[i] = std::sqrt(d2);
            state.nearest_label[i] = label;
        }
    }
}

} // namespace

double radical_inverse(std::uint64_t index, std::uint32_t base) {
    const double inv_base = 1.0 / base;
    double factor = inv_base;
    double value = 0.0;
    while (index > 0) {
        value += static_cast<double>(index % base) * factor;
        index /= base;
        factor *= inv_base;
    }
    return value;
}

PointSet halton_sequence(std::size_t count, std::size_t dim) {
    if (dim == 0 || dim > kPrimes.size())
        throw InvalidArgument("halton_sequence: dimension must be in [1, 16]");
    if (count == 0) throw InvalidArgument("halton_sequence: count must be positive");
    PointSet out(count, dim);
    for (std::size_t i = 0; i < count; ++i) {
        auto row = out[i];
        for (std::size_t k = 0; k < dim; ++k) row[k] = radical_inverse(i + 1, kPrimes[k]);
    }
    return out;
}

std::vector<std::size_t> random_index_subset(std::size_t n_total, std::size_t n_sub, Rng& rng) {
    if (n_total == 0) throw InvalidArgument("random_index_subset: empty population");
    n_sub = std::min(n_sub, n_total);
    std::vector<std::size_t> out(n_sub);
    // Sparse Fisher-Yates: only displaced slots are materialized, so the cost is
    // O(n_sub) regardless of n_total while drawing the same sequence as the dense form.
    std::unordered_map<std::size_t, std::size_t> displaced;
    displaced.reserve(2 * n_sub);
    auto slot = [&](std::size_t i) {
        auto it = displaced.find(i);
        return it == displaced.end() ? i : it->second;
    };
    for (std::size_t i = 0; i < n_sub; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, n_total - 1);
        const std::size_t j = pick(rng);
        const std::size_t vi = slot(i);
        const std::size_t vj = slot(j);
        out[i] = vj;
        displaced[j] = vi;
    }
    return out;
}

std::size_t mean_anchor(const PointSet& points, StartRule rule) {
    if (points.empty()) throw InvalidArgument("mean_anchor: empty point set");
    const auto centre = points.mean();
    std::size_t best = 0;
    double best_d2 = squared_distance(points[0], centre);
    for (std::size_t i = 1; i < points.size(); ++i) {
        const double d2 = squared_distance(points[i], centre);
        const bool better = rule == StartRule::MeanNearest ? d2 < best_d2 : d2 > best_d2;
        if (better) {
            best = i;
            best_d2 = d2;
        }
    }
    return best;
}

QuasiUniformState quasi_uniform_extend(const PointSet& points,
                                       std::span<const std::size_t> seed_indices,
                                       std::size_t target_count, StartRule start_rule) {
    const std::size_t n = points.size();
    if (n == 0) throw InvalidArgument("quasi_uniform_extend: empty point set");
    QuasiUniformState state;
    state.nearest_sq.assign(n, std::numeric_limits<double>::infinity());
    state.nearest_dist.assign(n, std::numeric_limits<double>::infinity());
    state.nearest_label.assign(n, kNoLabel);
    for (std::size_t s : seed_indices) {
        if (s >= n) throw InvalidArgument("quasi_uniform_extend: seed index out of range");
        add_selected(state, points, s);
    }
    if (state.selected.empty() && target_count > 0)
        add_selected(state, points, mean_anchor(points, start_rule));
    quasi_uniform_grow(state, points, target_count);
    return state;
}

void quasi_uniform_grow(QuasiUniformState& state, const PointSet& points, std::size_t target_count) {
    const std::size_t n = points.size();
    if (target_count > n) {
        state.capped = true;
        target_count = n;
    }
    while (state.selected.size() < target_count) {
        std::size_t best = 0;
        double best_d2 = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (state.nearest_sq[i] > best_d2) {
                best_d2 = state.nearest_sq[i];
                best = i;
            }
        }
        // Remaining rows all coincide with selected ones.
        if (best_d2 <= 0.0) break;
        state.sep_history.push_back(std::sqrt(best_d2));
        add_selected(state, points, best);
    }
}

double estimate_fill_distance(const PointSet& points, std::span<const double> box_lo,
                              std::span<const double> box_hi, std::size_t n_probe, Rng& rng) {
    const std::size_t d = points.dim();
    if (points.empty()) throw InvalidArgument("estimate_fill_distance: empty point set");
    if (box_lo.size() != d || box_hi.size() != d)
        throw InvalidArgument("estimate_fill_distance: box dimension mismatch");
    if (n_probe == 0) throw InvalidArgument("estimate_fill_distance: n_probe must be positive");
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> probe(d);
    double worst = 0.0;
    for (std::size_t p = 0; p < n_probe; ++p) {
        for (std::size_t k = 0; k < d; ++k) probe[k] = box_lo[k] + (box_hi[k] - box_lo[k]) * unit(rng);
        double nearest = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < points.size(); ++i)
            nearest = std::min(nearest, squared_distance(points[i], probe));
        worst = std::max(worst, nearest);
    }
    return std::sqrt(worst);
}

} // namespace srt
