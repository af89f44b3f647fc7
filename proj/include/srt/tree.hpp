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

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "srt/dataset.hpp"
#include "srt/exploration.hpp"
#include "srt/params.hpp"
#include "srt/point_set.hpp"
#include "srt/rng.hpp"

namespace srt {

/// Routing rule: dot(x, normal) <= threshold goes to the first child.
struct Hyperplane {
    std::vector<double> normal;
    double threshold = 0.0;

    bool first_side(std::span<const double> x) const { return dot(x, normal) <= threshold; }
};

enum class NodeStatus { Internal, LeafConverged, LeafInsufficient, LeafDegenerate };
enum class SplitMode { Equal, Random };

std::string_view to_string(NodeStatus status);
NodeStatus node_status_from_string(std::string_view name);
std::string_view to_string(SplitMode mode);
SplitMode split_mode_from_string(std::string_view name);

struct NodeStats {
    std::size_t n_points = 0;
    std::size_t n_subset = 0;   ///< size of the sparsified fitting subset
    std::size_t depth = 0;
    double residual_rae = 0.0;  ///< after this node's refinement, over the node's points
    double n_bar_c = 0.0;       ///< center average over the root-to-node path
    std::vector<double> box_lo;
    std::vector<double> box_hi;
};

/// Inputs of a node's least-squares fit, kept only when requested.
struct FitRecord {
    std::vector<std::size_t> subset_rows;  ///< dataset rows of the fitting subset
    std::vector<double> residual_before;   ///< residual on those rows before the fit
};

struct TreeNode {
    Refinement refinement;
    NodeStatus status = NodeStatus::LeafConverged;
    NodeStats stats;
    std::optional<Hyperplane> split;
    std::array<std::unique_ptr<TreeNode>, 2> children;
    std::optional<FitRecord> fit;

    bool is_leaf() const { return !children[0]; }
};

struct SrtModel {
    std::unique_ptr<TreeNode> root;
    std::size_t dim = 0;
    WorkingParams params;     ///< resolved parameters
    std::uint64_t seed = 0;
    SplitMode mode = SplitMode::Equal;

    std::size_t node_count() const;
    std::size_t depth() const;
};

struct InsufficientRegion {
    std::vector<std::pair<Hyperplane, int>> path; ///< (hyperplane, side 0 = "<=", 1 = ">")
    std::vector<double> box_lo;
    std::vector<double> box_hi;
    std::size_t n_points = 0;
    double residual_rae = 0.0;
    NodeStatus status = NodeStatus::LeafInsufficient;
};

struct NodeLog {
    std::size_t depth = 0;
    std::size_t n_points = 0;
    std::size_t n_centers = 0;
    std::vector<double> eps_trail;
    double kappa = 1.0;
    StopReason stop_reason = StopReason::NoImprovement;
    NodeStatus status = NodeStatus::LeafConverged;
    double n_bar_c = 0.0;
};

struct TrainingReport {
    std::vector<InsufficientRegion> insufficient_regions; ///< insufficient and degenerate leaves
    std::vector<NodeLog> nodes;                           ///< depth-first, first child first
    std::vector<double> n_bar_c_trail;
    double seconds = 0.0;
    std::size_t point_visits = 0; ///< sum of node sizes; O(N log N) for equal splitting
};

/// First splitting point, farthest point from it, and the direction between them.
struct SplitChoice {
    std::size_t row_a = 0;
    std::size_t row_b = 0;
    std::vector<double> direction;
};

/**
 * Chooses the split direction for a node from its fitting subset and its
 * post-refinement residual. Throws DegenerateGeometry when all points coincide.
 */
SplitChoice choose_split(const PointSet& subset, std::span<const double> residual);

struct Partition {
    std::vector<std::size_t> first;  ///< rows routed to child 1, ascending
    std::vector<std::size_t> second; ///< rows routed to child 2, ascending
    Hyperplane plane;
    std::size_t rank = 0;            ///< nominal rank k before tie adjustment
};

/**
 * Splits `points` by projection onto `direction` at the nearest-rank
 * ceil(N/2) (Equal) or ceil(p*N/100) with p uniform in 37..62 (Random).
 * Throws DegenerateGeometry when all projections coincide.
 */
Partition partition(const PointSet& points, std::span<const double> direction, SplitMode mode, Rng& rng);

/// Partition at an explicit percentile p in (0, 100].
Partition partition_at_percent(const PointSet& points, std::span<const double> direction, unsigned percent);

/**
 * Trains one tree. Sibling subtrees are trained as parallel tasks; the result
 * does not depend on scheduling or thread count.
 */
std::pair<SrtModel, TrainingReport> train_srt(const Dataset& dataset, const WorkingParams& params,
                                              SplitMode mode, std::uint64_t seed);

double predict_srt(const SrtModel& model, std::span<const double> x);
std::vector<double> predict_srt(const SrtModel& model, const PointSet& points);

/// Leaf reached by routing x from the root.
const TreeNode& route(const SrtModel& model, std::span<const double> x);

/// Summary of a trained tree collected by depth-first traversal.
TrainingReport summarize(const SrtModel& model);

/// max|pred - truth| / max|truth|; the absolute max error when max|truth| is zero.
double rae(std::span<const double> predictions, std::span<const double> truths);

} // namespace srt
