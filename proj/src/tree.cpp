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

#include "srt/tree.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <tbb/task_group.h>

#include "srt/errors.hpp"
#include "srt/sampling.hpp"

namespace srt {

std::string_view to_string(NodeStatus status) {
    switch (status) {
    case NodeStatus::Internal: return "internal";
    case NodeStatus::LeafConverged: return "leaf-converged";
    case NodeStatus::LeafInsufficient: return "leaf-insufficient";
    case NodeStatus::LeafDegenerate: return "leaf-degenerate";
    }
    return "internal";
}

NodeStatus node_status_from_string(std::string_view name) {
    if (name == "internal") return NodeStatus::Internal;
    if (name == "leaf-converged") return NodeStatus::LeafConverged;
    if (name == "leaf-insufficient") return NodeStatus::LeafInsufficient;
    if (name == "leaf-degenerate") return NodeStatus::LeafDegenerate;
    throw FormatError("unknown node status '" + std::string(name) + "'");
}

std::string_view to_string(SplitMode mode) { return mode == SplitMode::Equal ? "equal" : "random"; }

SplitMode split_mode_from_string(std::string_view name) {
    if (name == "equal") return SplitMode::Equal;
    if (name == "random") return SplitMode::Random;
    throw InvalidArgument("unknown split mode '" + std::string(name) + "'");
}

double rae(std::span<const double> predictions, std::span<const double> truths) {
    if (predictions.size() != truths.size()) throw InvalidArgument("rae: length mismatch");
    if (truths.empty()) throw InvalidArgument("rae: empty input");
    double err = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < truths.size(); ++i) {
        err = std::max(err, std::abs(predictions[i] - truths[i]));
        scale = std::max(scale, std::abs(truths[i]));
    }
    return scale > 0.0 ? err / scale : err;
}

SplitChoice choose_split(const PointSet& subset, std::span<const double> residual) {
    const std::size_t n = subset.size();
    if (n < 2) throw DegenerateGeometry("choose_split: fewer than two points");
    if (residual.size() != n) throw InvalidArgument("choose_split: residual length mismatch");
    const auto qs = quasi_uniform_extend(subset, {}, subset.dim() + 1, StartRule::MeanFarthest);

    std::vector<double> sum(qs.selected.size(), 0.0);
    std::vector<std::size_t> count(qs.selected.size(), 0);
    for (std::size_t i = 0; i < n; ++i) {
        sum[qs.nearest_label[i]] += residual[i] * residual[i];
        ++count[qs.nearest_label[i]];
    }
    std::size_t best = 0;
    double best_mean = -1.0;
    for (std::size_t l = 0; l < sum.size(); ++l) {
        if (count[l] == 0) continue;
        const double mean = sum[l] / static_cast<double>(count[l]);
        if (mean > best_mean) {
            best_mean = mean;
            best = l;
        }
    }

    SplitChoice out;
    out.row_a = qs.selected[best];
    const auto a = subset[out.row_a];
    double far = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d2 = squared_distance(subset[i], a);
        if (d2 > far) {
            far = d2;
            out.row_b = i;
        }
    }
    if (far <= 0.0) throw DegenerateGeometry("choose_split: all points coincide");
    const auto b = subset[out.row_b];
    out.direction.resize(subset.dim());
    for (std::size_t k = 0; k < subset.dim(); ++k) out.direction[k] = b[k] - a[k];
    return out;
}

Partition partition_at_percent(const PointSet& points, std::span<const double> direction, unsigned percent) {
    const std::size_t n = points.size();
    if (direction.size() != points.dim()) throw InvalidArgument("partition: direction dimension mismatch");
    if (percent == 0 || percent > 100) throw InvalidArgument("partition: percent must lie in 1..100");
    if (n < 2) throw DegenerateGeometry("partition: fewer than two points");
    if (std::all_of(direction.begin(), direction.end(), [](double v) { return v == 0.0; }))
        throw InvalidArgument("partition: zero direction");

    std::vector<double> proj(n);
    for (std::size_t i = 0; i < n; ++i) proj[i] = dot(points[i], direction);

    std::size_t k = (static_cast<std::size_t>(percent) * n + 99) / 100;
    k = std::clamp<std::size_t>(k, 1, n - 1);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto by_projection = [&](std::size_t a, std::size_t b) {
        return proj[a] < proj[b] || (proj[a] == proj[b] && a < b);
    };
    std::nth_element(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k - 1), order.end(), by_projection);
    const double t = proj[order[k - 1]];

    // Points tied with the rank-k projection all go to one side so that the
    // stored hyperplane routes every training point to its own child.
    std::size_t at_most = 0;
    double below_max = -std::numeric_limits<double>::infinity();
    for (double p : proj) {
        if (p <= t) ++at_most;
        if (p < t) below_max = std::max(below_max, p);
    }
    Partition out;
    out.rank = k;
    out.plane.normal.assign(direction.begin(), direction.end());
    if (at_most < n) {
        out.plane.threshold = t;
    } else if (below_max > -std::numeric_limits<double>::infinity()) {
        out.plane.threshold = below_max;
    } else {
        throw DegenerateGeometry("partition: all projections coincide");
    }
    for (std::size_t i = 0; i < n; ++i)
        (proj[i] <= out.plane.threshold ? out.first : out.second).push_back(i);
    return out;
}

Partition partition(const PointSet& points, std::span<const double> direction, SplitMode mode, Rng& rng) {
    unsigned percent = 50;
    if (mode == SplitMode::Random) {
        std::uniform_int_distribution<unsigned> pick(37, 62);
        percent = pick(rng);
    }
    return partition_at_percent(points, direction, percent);
}

namespace {

struct Context {
    const Dataset& data;
    WorkingParams params;
    SplitMode mode;
    double rae_scale;
    std::size_t dim;
    KernelSpec kernel;
    ExplorationBudget budget;
};

struct NodeInput {
    std::vector<std::size_t> rows;      ///< dataset rows, ascending
    std::vector<double> residual;       ///< aligned with rows
    std::vector<std::size_t> inherited; ///< dataset rows of inherited centers, ascending
    std::vector<std::size_t> path_counts;
    std::uint64_t key = 0;
    std::size_t depth = 0;
};

constexpr std::size_t kParallelGrain = 4096;

double residual_rae(const Context& ctx, std::span<const double> residual) {
    double m = 0.0;
    for (double r : residual) m = std::max(m, std::abs(r));
    return m / ctx.rae_scale;
}

void fill_box(const Context& ctx, std::span<const std::size_t> rows, NodeStats& stats) {
    stats.box_lo.assign(ctx.dim, std::numeric_limits<double>::infinity());
    stats.box_hi.assign(ctx.dim, -std::numeric_limits<double>::infinity());
    for (std::size_t r : rows) {
        auto p = ctx.data.points[r];
        for (std::size_t k = 0; k < ctx.dim; ++k) {
            stats.box_lo[k] = std::min(stats.box_lo[k], p[k]);
            stats.box_hi[k] = std::max(stats.box_hi[k], p[k]);
        }
    }
}

/// Leaf that carries no refinement of its own.
void make_bare_leaf(const Context& ctx, const NodeInput& in, TreeNode& node, NodeStatus unconverged) {
    node.refinement = Refinement{};
    node.refinement.kernel = ctx.kernel;
    node.refinement.kernel.delta = 0.0;
    node.refinement.centers = PointSet(ctx.dim);
    node.refinement.diagnostics.eps_trail.clear();
    node.stats.n_points = in.rows.size();
    node.stats.depth = in.depth;
    node.stats.residual_rae = residual_rae(ctx, in.residual);
    node.stats.n_bar_c = in.path_counts.empty() ? 0.0 : update_center_average(in.path_counts);
    fill_box(ctx, in.rows, node.stats);
    node.status = node.stats.residual_rae <= ctx.params.epsilon ? NodeStatus::LeafConverged : unconverged;
}

/// Positions (into in.rows) of the fitting subset, ascending, and of the inherited centers within it.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>>
sparsify(const NodeInput& in, std::size_t n_sub, Rng& rng) {
    const std::size_t n = in.rows.size();
    std::vector<std::size_t> inherited_pos;
    inherited_pos.reserve(in.inherited.size());
    for (std::size_t r : in.inherited) {
        auto it = std::lower_bound(in.rows.begin(), in.rows.end(), r);
        if (it != in.rows.end() && *it == r) inherited_pos.push_back(static_cast<std::size_t>(it - in.rows.begin()));
    }

    std::vector<std::size_t> positions;
    if (n_sub >= n) {
        positions.resize(n);
        std::iota(positions.begin(), positions.end(), std::size_t{0});
    } else {
        n_sub = std::max(n_sub, inherited_pos.size());
        positions = inherited_pos;
        const auto draw = random_index_subset(n, n_sub, rng);
        for (std::size_t p : draw) {
            if (positions.size() == n_sub) break;
            if (!std::binary_search(inherited_pos.begin(), inherited_pos.end(), p)) positions.push_back(p);
        }
        std::sort(positions.begin(), positions.end());
    }

    std::vector<std::size_t> inherited_sub;
    inherited_sub.reserve(inherited_pos.size());
    for (std::size_t p : inherited_pos) {
        auto it = std::lower_bound(positions.begin(), positions.end(), p);
        inherited_sub.push_back(static_cast<std::size_t>(it - positions.begin()));
    }
    return {std::move(positions), std::move(inherited_sub)};
}

void build(const Context& ctx, NodeInput in, TreeNode& node) {
    const std::size_t n = in.rows.size();
    const std::size_t d = ctx.dim;
    const auto& params = ctx.params;

    if (n < d + 2) {
        make_bare_leaf(ctx, in, node, NodeStatus::LeafInsufficient);
        return;
    }

    Rng rng(in.key);
    std::size_t n_sub = in.depth == 0
                            ? std::min(n, *params.n_i_root)
                            : next_subset_size(n, update_center_average(in.path_counts), params.subset_factor);
    n_sub = std::max(n_sub, std::min(n, *params.min_centers + d + 1));
    auto [positions, inherited_sub] = sparsify(in, n_sub, rng);

    std::vector<std::size_t> subset_rows(positions.size());
    std::vector<double> subset_residual(positions.size());
    for (std::size_t i = 0; i < positions.size(); ++i) {
        subset_rows[i] = in.rows[positions[i]];
        subset_residual[i] = in.residual[positions[i]];
    }
    const PointSet subset = ctx.data.points.select(subset_rows);

    node.stats.n_points = n;
    node.stats.n_subset = subset.size();
    node.stats.depth = in.depth;
    fill_box(ctx, in.rows, node.stats);
    if (params.keep_fit_records) node.fit = FitRecord{subset_rows, subset_residual};

    try {
        node.refinement = explore_refinement(subset_residual, subset, inherited_sub, ctx.budget, ctx.kernel);
    } catch (const DegenerateGeometry&) {
        make_bare_leaf(ctx, in, node, NodeStatus::LeafDegenerate);
        node.fit.reset();
        return;
    }

    for (std::size_t i = 0; i < n; ++i) in.residual[i] -= node.refinement.evaluate(ctx.data.points[in.rows[i]]);
    node.stats.residual_rae = residual_rae(ctx, in.residual);

    in.path_counts.push_back(node.refinement.size());
    const double n_bar_c = update_center_average(in.path_counts);
    node.stats.n_bar_c = n_bar_c;

    if (node.stats.residual_rae <= params.epsilon) {
        node.status = NodeStatus::LeafConverged;
        return;
    }

    for (std::size_t i = 0; i < positions.size(); ++i) subset_residual[i] = in.residual[positions[i]];
    Partition part;
    try {
        const auto choice = choose_split(subset, subset_residual);
        const PointSet node_points = ctx.data.points.select(in.rows);
        part = partition(node_points, choice.direction, ctx.mode, rng);
    } catch (const DegenerateGeometry&) {
        node.status = NodeStatus::LeafDegenerate;
        return;
    }

    std::vector<std::size_t> center_rows(node.refinement.center_rows.size());
    for (std::size_t l = 0; l < center_rows.size(); ++l) center_rows[l] = subset_rows[node.refinement.center_rows[l]];
    std::sort(center_rows.begin(), center_rows.end());

    std::array<NodeInput, 2> kids;
    for (int side = 0; side < 2; ++side) {
        const auto& pos = side == 0 ? part.first : part.second;
        auto& kid = kids[side];
        kid.rows.resize(pos.size());
        kid.residual.resize(pos.size());
        for (std::size_t i = 0; i < pos.size(); ++i) {
            kid.rows[i] = in.rows[pos[i]];
            kid.residual[i] = in.residual[pos[i]];
        }
        for (std::size_t r : center_rows)
            if (part.plane.first_side(ctx.data.points[r]) == (side == 0)) kid.inherited.push_back(r);
        kid.path_counts = in.path_counts;
        kid.key = derive_seed(in.key, static_cast<std::uint64_t>(side) + 1);
        kid.depth = in.depth + 1;
    }
    in = NodeInput{};

    node.status = NodeStatus::Internal;
    node.split = std::move(part.plane);
    std::array<bool, 2> recurse{};
    for (int side = 0; side < 2; ++side) {
        node.children[side] = std::make_unique<TreeNode>();
        const auto& kid = kids[side];
        const bool too_small = static_cast<double>(kid.rows.size()) < params.omega4 * n_bar_c;
        if (too_small || residual_rae(ctx, kid.residual) <= params.epsilon)
            make_bare_leaf(ctx, kid, *node.children[side], NodeStatus::LeafInsufficient);
        else
            recurse[side] = true;
    }

    if (recurse[0] && recurse[1] && n >= kParallelGrain) {
        tbb::task_group group;
        group.run([&] { build(ctx, std::move(kids[0]), *node.children[0]); });
        build(ctx, std::move(kids[1]), *node.children[1]);
        group.wait();
    } else {
        for (int side = 0; side < 2; ++side)
            if (recurse[side]) build(ctx, std::move(kids[side]), *node.children[side]);
    }
}

void collect(const TreeNode& node, std::vector<std::pair<Hyperplane, int>>& path, TrainingReport& report) {
    NodeLog log;
    log.depth = node.stats.depth;
    log.n_points = node.stats.n_points;
    log.n_centers = node.refinement.size();
    log.eps_trail = node.refinement.diagnostics.eps_trail;
    log.kappa = node.refinement.diagnostics.kappa;
    log.stop_reason = node.refinement.diagnostics.stop_reason;
    log.status = node.status;
    log.n_bar_c = node.stats.n_bar_c;
    report.nodes.push_back(std::move(log));
    report.n_bar_c_trail.push_back(node.stats.n_bar_c);
    report.point_visits += node.stats.n_points;

    if (node.status == NodeStatus::LeafInsufficient || node.status == NodeStatus::LeafDegenerate) {
        InsufficientRegion region;
        region.path = path;
        region.box_lo = node.stats.box_lo;
        region.box_hi = node.stats.box_hi;
        region.n_points = node.stats.n_points;
        region.residual_rae = node.stats.residual_rae;
        region.status = node.status;
        report.insufficient_regions.push_back(std::move(region));
    }
    if (node.is_leaf()) return;
    for (int side = 0; side < 2; ++side) {
        path.emplace_back(*node.split, side);
        collect(*node.children[side], path, report);
        path.pop_back();
    }
}

std::size_t count_nodes(const TreeNode& node) {
    if (node.is_leaf()) return 1;
    return 1 + count_nodes(*node.children[0]) + count_nodes(*node.children[1]);
}

std::size_t node_depth(const TreeNode& node) {
    if (node.is_leaf()) return 0;
    return 1 + std::max(node_depth(*node.children[0]), node_depth(*node.children[1]));
}

} // namespace

std::size_t SrtModel::node_count() const { return root ? count_nodes(*root) : 0; }
std::size_t SrtModel::depth() const { return root ? node_depth(*root) : 0; }

TrainingReport summarize(const SrtModel& model) {
    TrainingReport report;
    if (!model.root) return report;
    std::vector<std::pair<Hyperplane, int>> path;
    collect(*model.root, path, report);
    return report;
}

std::pair<SrtModel, TrainingReport> train_srt(const Dataset& dataset, const WorkingParams& params,
                                              SplitMode mode, std::uint64_t seed) {
    const auto start = std::chrono::steady_clock::now();
    dataset.check_consistent();
    if (dataset.size() == 0) throw DataError("train_srt: empty dataset");
    dataset.check_distinct();

    double max_abs_f = 0.0;
    for (double v : dataset.values) max_abs_f = std::max(max_abs_f, std::abs(v));
    const std::size_t d = dataset.dim();

    Context ctx{dataset, params.resolve(d, max_abs_f), mode, max_abs_f > 0.0 ? max_abs_f : 1.0, d, {}, {}};
    ctx.kernel.kind = ctx.params.kernel;
    ctx.kernel.beta = ctx.params.kernel == KernelKind::InverseMultiquadric ? ctx.params.imq_beta : 1.0;
    ctx.budget.omega1 = ctx.params.omega1;
    ctx.budget.omega2 = *ctx.params.omega2;
    ctx.budget.omega3 = ctx.params.omega3;
    ctx.budget.min_centers = *ctx.params.min_centers;

    NodeInput root;
    root.rows.resize(dataset.size());
    std::iota(root.rows.begin(), root.rows.end(), std::size_t{0});
    root.residual = dataset.values;
    root.key = derive_seed(seed, 0);

    SrtModel model;
    model.root = std::make_unique<TreeNode>();
    model.dim = d;
    model.params = ctx.params;
    model.seed = seed;
    model.mode = mode;
    build(ctx, std::move(root), *model.root);

    TrainingReport report = summarize(model);
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {std::move(model), std::move(report)};
}

const TreeNode& route(const SrtModel& model, std::span<const double> x) {
    const TreeNode* node = model.root.get();
    while (!node->is_leaf()) node = node->children[node->split->first_side(x) ? 0 : 1].get();
    return *node;
}

double predict_srt(const SrtModel& model, std::span<const double> x) {
    if (x.size() != model.dim) throw InvalidArgument("predict_srt: dimension mismatch");
    double s = 0.0;
    const TreeNode* node = model.root.get();
    while (true) {
        s += node->refinement.evaluate(x);
        if (node->is_leaf()) break;
        node = node->children[node->split->first_side(x) ? 0 : 1].get();
    }
    return s;
}

std::vector<double> predict_srt(const SrtModel& model, const PointSet& points) {
    std::vector<double> out(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) out[i] = predict_srt(model, points[i]);
    return out;
}

} // namespace srt
