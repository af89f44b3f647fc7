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

#include "srt/forest.hpp"

#include <algorithm>
#include <cmath>

#include <tbb/parallel_for.h>

#include "srt/errors.hpp"

namespace srt {

namespace {

/// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

} // namespace

std::uint64_t tree_seed(std::uint64_t master_seed, std::size_t index) {
    return derive_seed(master_seed, 0x5f0000ULL + index);
}

std::pair<SrfModel, std::vector<TrainingReport>> train_srf(const Dataset& dataset, const WorkingParams& params,
                                                           std::size_t n_trees, std::uint64_t master_seed) {
    if (n_trees == 0) throw InvalidArgument("train_srf: tree count must be positive");
    SrfModel model;
    model.master_seed = master_seed;
    model.trees.resize(n_trees);
    std::vector<TrainingReport> reports(n_trees);
    WorkingParams p = params;
    p.n_trees = n_trees;
    tbb::parallel_for(std::size_t{0}, n_trees, [&](std::size_t i) {
        const SplitMode mode = i == 0 ? SplitMode::Equal : SplitMode::Random;
        auto [tree, report] = train_srt(dataset, p, mode, tree_seed(master_seed, i));
        model.trees[i] = std::move(tree);
        reports[i] = std::move(report);
    });
    return {std::move(model), std::move(reports)};
}

SrfModel as_forest(SrtModel tree) {
    SrfModel model;
    model.master_seed = tree.seed;
    model.trees.push_back(std::move(tree));
    return model;
}

double filtered_mean(std::span<const double> values) {
    if (values.empty()) throw InvalidArgument("filtered_mean: no values");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());

    CompensatedSum total;
    for (double v : sorted) total.add(v);
    const double mean = total.value() / n;

    // n * (x_i - mean) accumulated from pairwise differences, so that members
    // symmetric about the mean get deviations of exactly equal size.
    std::vector<double> dev(sorted.size());
    CompensatedSum dev_total;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        CompensatedSum d;
        for (double w : sorted) d.add(sorted[i] - w);
        dev[i] = d.value() * d.value();
        dev_total.add(dev[i]);
    }
    const double dev_sum = dev_total.value();

    CompensatedSum kept;
    std::size_t count = 0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (n * dev[i] < dev_sum) { // below the mean deviation
            kept.add(sorted[i]);
            ++count;
        }
    }
    if (count == 0) return mean;
    const double out = kept.value() / static_cast<double>(count);
    // Guard the hull property against rounding in the compensated sum.
    return std::clamp(out, sorted.front(), sorted.back());
}

double predict_srf(const SrfModel& model, std::span<const double> x) {
    if (model.trees.empty()) throw InvalidArgument("predict_srf: empty forest");
    std::vector<double> values(model.trees.size());
    for (std::size_t i = 0; i < model.trees.size(); ++i) values[i] = predict_srt(model.trees[i], x);
    return filtered_mean(values);
}

std::vector<double> predict_srf(const SrfModel& model, const PointSet& points) {
    std::vector<double> out(points.size());
    tbb::parallel_for(std::size_t{0}, points.size(), [&](std::size_t i) { out[i] = predict_srf(model, points[i]); });
    return out;
}

} // namespace srt
