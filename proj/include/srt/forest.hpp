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

#include <cstdint>
#include <span>
#include <vector>

#include "srt/tree.hpp"

namespace srt {

/// Ensemble of trees over one dataset; tree 0 uses equal splitting, the rest random splitting.
struct SrfModel {
    std::vector<SrtModel> trees;
    std::uint64_t master_seed = 0;

    std::size_t size() const { return trees.size(); }
    std::size_t dim() const { return trees.empty() ? 0 : trees.front().dim; }
};

/// Seed of tree `index` under `master_seed`.
std::uint64_t tree_seed(std::uint64_t master_seed, std::size_t index);

std::pair<SrfModel, std::vector<TrainingReport>> train_srf(const Dataset& dataset, const WorkingParams& params,
                                                           std::size_t n_trees, std::uint64_t master_seed);

/// Wraps a single tree as a one-member ensemble.
SrfModel as_forest(SrtModel tree);

/**
 * Deviation-filtered mean: averages the members whose squared deviation from
 * the ensemble mean is strictly below the mean squared deviation. Falls back
 * to the plain mean when no member qualifies. The result is independent of
 * the order of `values`.
 */
double filtered_mean(std::span<const double> values);

double predict_srf(const SrfModel& model, std::span<const double> x);
std::vector<double> predict_srf(const SrfModel& model, const PointSet& points);

} // namespace srt
