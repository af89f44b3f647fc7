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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

#include "oracles.hpp"
#include "srt/errors.hpp"
#include "srt/sampling.hpp"
#include "srt/test_functions.hpp"
#include "srt/tree.hpp"

using namespace srt;

namespace {

PointSet line_points(std::size_t n) {
    PointSet p(n, 1);
    for (std::size_t i = 0; i < n; ++i) p[i][0] = static_cast<double>(i);
    return p;
}

double max_abs_value(const Dataset& ds) {
    double m = 0.0;
    for (double v : ds.values) m = std::max(m, std::abs(v));
    return m;
}

std::vector<std::size_t> joined(const Partition& p) {
    std::vector<std::size_t> all = p.first;
    all.insert(all.end(), p.second.begin(), p.second.end());
    std::sort(all.begin(), all.end());
    return all;
}

// Visits every node with the list of its ancestors (root first).
void walk(const TreeNode& node, std::vector<const TreeNode*>& path,
          const std::function<void(const TreeNode&, const std::vector<const TreeNode*>&)>& fn) {
    fn(node, path);
    if (node.is_leaf()) return;
    path.push_back(&node);
    walk(*node.children[0], path, fn);
    walk(*node.children[1], path, fn);
    path.pop_back();
}

} // namespace

TEST_CASE("equal split of seven points") {
    Rng rng(1);
    const std::vector<double> dir{1.0};
    const auto p = partition(line_points(7), dir, SplitMode::Equal, rng);
    CHECK(p.first == std::vector<std::size_t>{0, 1, 2, 3});
    CHECK(p.second == std::vector<std::size_t>{4, 5, 6});
    CHECK(p.plane.threshold == 3.0);
}

TEST_CASE("split at the 37th percentile") {
    const std::vector<double> dir{-2.0};
    const auto p = partition_at_percent(line_points(100), dir, 37);
    CHECK(p.first.size() == 37);
    CHECK(p.second.size() == 63);
    // negative direction puts the largest coordinates first
    CHECK(p.first.front() == 63);
    CHECK(p.second.back() == 62);
}

TEST_CASE("point on the hyperplane goes to the first child") {
    const std::vector<double> dir{1.0};
    const auto p = partition_at_percent(line_points(10), dir, 50);
    const std::vector<double> on{p.plane.threshold};
    CHECK(p.plane.first_side(on));
    const std::vector<double> above{std::nextafter(p.plane.threshold, 1e9)};
    CHECK_FALSE(p.plane.first_side(above));
}

TEST_CASE("random splits land in the allowed rank window") {
    Rng rng(2);
    const std::vector<double> dir{1.0};
    std::vector<int> seen(101, 0);
    for (int t = 0; t < 2000; ++t) {
        const auto p = partition(line_points(100), dir, SplitMode::Random, rng);
        REQUIRE(p.first.size() >= 37);
        REQUIRE(p.first.size() <= 62);
        ++seen[p.first.size()];
    }
    for (std::size_t k = 37; k <= 62; ++k) CHECK(seen[k] > 0);
}

TEST_CASE("partitions of random clouds have exact sizes") {
    Rng rng(3);
    std::uniform_int_distribution<std::size_t> size_d(2, 400);
    std::uniform_int_distribution<unsigned> pct_d(1, 100);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int t = 0; t < 1000; ++t) {
        const std::size_t n = size_d(rng), d = 1 + static_cast<std::size_t>(t) % 4;
        const PointSet pts = oracle::uniform_cloud(n, d, rng, -3.0, 3.0);
        std::vector<double> dir(d);
        for (double& v : dir) v = g(rng);
        const unsigned pct = pct_d(rng);
        const auto p = partition_at_percent(pts, dir, pct);
        std::size_t k = (pct * n + 99) / 100;
        k = std::clamp<std::size_t>(k, 1, n - 1);
        CHECK(p.first.size() == k);
        CHECK(p.first.size() + p.second.size() == n);
        std::vector<std::size_t> all(n);
        std::iota(all.begin(), all.end(), std::size_t{0});
        CHECK(joined(p) == all);
        for (std::size_t i : p.first) CHECK(p.plane.first_side(pts[i]));
        for (std::size_t i : p.second) CHECK_FALSE(p.plane.first_side(pts[i]));
    }
}

TEST_CASE("tied projections stay on one side") {
    PointSet pts(6, 1);
    const double v[6] = {0, 1, 1, 1, 1, 2};
    for (std::size_t i = 0; i < 6; ++i) pts[i][0] = v[i];
    const std::vector<double> dir{1.0};
    const auto p = partition_at_percent(pts, dir, 50);
    CHECK(p.first == std::vector<std::size_t>{0, 1, 2, 3, 4});
    CHECK(p.second == std::vector<std::size_t>{5});

    PointSet top(4, 1);
    top[0][0] = 0.0;
    for (std::size_t i = 1; i < 4; ++i) top[i][0] = 5.0;
    const auto q = partition_at_percent(top, dir, 50);
    CHECK(q.first == std::vector<std::size_t>{0});
    CHECK(q.second == std::vector<std::size_t>{1, 2, 3});
}

TEST_CASE("partition argument errors") {
    const std::vector<double> dir{1.0};
    CHECK_THROWS_AS(partition_at_percent(line_points(10), dir, 0), InvalidArgument);
    CHECK_THROWS_AS(partition_at_percent(line_points(10), dir, 101), InvalidArgument);
    CHECK_THROWS_AS(partition_at_percent(line_points(1), dir, 50), DegenerateGeometry);
    PointSet same(5, 1);
    for (std::size_t i = 0; i < 5; ++i) same[i][0] = 2.0;
    CHECK_THROWS_AS(partition_at_percent(same, dir, 50), DegenerateGeometry);

    PointSet flat(4, 2);
    for (std::size_t i = 0; i < 4; ++i) flat[i][1] = static_cast<double>(i);
    const std::vector<double> across{1.0, 0.0};
    CHECK_THROWS_AS(partition_at_percent(flat, across, 50), DegenerateGeometry);
    CHECK_THROWS_AS(choose_split(same, std::vector<double>(5, 1.0)), DegenerateGeometry);
}

TEST_CASE("split direction joins the first point and its farthest partner") {
    Rng rng(4);
    const PointSet sub = oracle::uniform_cloud(60, 2, rng);
    std::vector<double> r(sub.size());
    for (std::size_t i = 0; i < sub.size(); ++i) r[i] = sub[i][0] > 0.8 ? 5.0 : 0.01;
    const auto c = choose_split(sub, r);
    double far = 0.0;
    for (std::size_t i = 0; i < sub.size(); ++i) far = std::max(far, oracle::sq_dist(sub, i, c.row_a));
    CHECK(oracle::sq_dist(sub, c.row_b, c.row_a) == far);
    for (std::size_t k = 0; k < 2; ++k) CHECK(c.direction[k] == sub[c.row_b][k] - sub[c.row_a][k]);
}

TEST_CASE("rae examples") {
    const std::vector<double> t{1.0, -2.0, 0.5};
    CHECK(rae(t, t) == 0.0);
    const std::vector<double> p{1.2, -2.0, 0.5};
    CHECK(rae(p, t) == doctest::Approx(0.1).epsilon(1e-14));
    const std::vector<double> zero(3, 0.0), off{0.1, -0.3, 0.0};
    CHECK(rae(off, zero) == doctest::Approx(0.3).epsilon(1e-15));
    const std::vector<double> shorter{1.0, 2.0}, none;
    CHECK_THROWS_AS(rae(t, shorter), InvalidArgument);
    CHECK_THROWS_AS(rae(none, none), InvalidArgument);
}

TEST_CASE("saddle on 500 Halton points needs a single node") {
    const Dataset ds = make_dataset(TestFunction::QuadSaddle, sample_points(Sampler::Halton, 500, 2, -7, 7, 0));
    const WorkingParams p = WorkingParams{}.resolve(2, max_abs_value(ds));
    const auto [model, report] = train_srt(ds, p, SplitMode::Equal, 1);
    CHECK(model.node_count() == 1);
    CHECK(model.root->status == NodeStatus::LeafConverged);
    CHECK(rae(predict_srt(model, ds.points), ds.values) <= 0.01);
    CHECK(report.insufficient_regions.empty());
}

TEST_CASE("a constant target converges at the root") {
    Dataset ds;
    ds.points = sample_points(Sampler::Halton, 300, 2, 0, 1, 0);
    ds.values.assign(300, 5.0);
    const WorkingParams p = WorkingParams{}.resolve(2, 5.0);
    const auto [model, report] = train_srt(ds, p, SplitMode::Equal, 9);
    CHECK(model.node_count() == 1);
    CHECK(rae(predict_srt(model, ds.points), ds.values) <= p.epsilon);
}

TEST_CASE("tree structure on an oscillating target") {
    const Dataset ds = make_dataset(TestFunction::Franke, sample_points(Sampler::Uniform, 4000, 2, 0, 1, 17));
    const double max_f = max_abs_value(ds);
    WorkingParams base;
    base.epsilon = 1e-3;
    base.keep_fit_records = true;
    const WorkingParams p = base.resolve(2, max_f);
    const auto [model, report] = train_srt(ds, p, SplitMode::Equal, 5);
    REQUIRE(model.node_count() > 1);
    CHECK(report.nodes.size() == model.node_count());

    // The residual each node fitted equals the data minus every ancestor's layer.
    std::size_t checked = 0;
    std::vector<const TreeNode*> path;
    walk(*model.root, path, [&](const TreeNode& node, const std::vector<const TreeNode*>& anc) {
        if (!node.fit) return;
        for (std::size_t i = 0; i < node.fit->subset_rows.size(); i += 7) {
            const auto x = ds.points[node.fit->subset_rows[i]];
            double expect = ds.values[node.fit->subset_rows[i]];
            for (const TreeNode* a : anc) expect -= a->refinement.evaluate(x);
            CHECK(std::abs(node.fit->residual_before[i] - expect) <= 1e-10 * max_f);
            ++checked;
        }
        // internal nodes have a split and two children whose sizes add up
        if (!node.is_leaf()) {
            CHECK(node.split.has_value());
            CHECK(node.children[0]->stats.n_points + node.children[1]->stats.n_points == node.stats.n_points);
        }
    });
    CHECK(checked > 0);

    // Training points reach leaves whose boxes contain them, and converged leaves honour epsilon.
    const auto pred = predict_srt(model, ds.points);
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const TreeNode& leaf = route(model, ds.points[i]);
        for (std::size_t k = 0; k < 2; ++k) {
            CHECK(ds.points[i][k] >= leaf.stats.box_lo[k]);
            CHECK(ds.points[i][k] <= leaf.stats.box_hi[k]);
        }
        if (leaf.status == NodeStatus::LeafConverged)
            CHECK(std::abs(pred[i] - ds.values[i]) <= p.epsilon * max_f * (1 + 1e-9));
    }
}

TEST_CASE("training is deterministic") {
    const Dataset ds = make_dataset(TestFunction::Franke, sample_points(Sampler::Uniform, 3000, 2, 0, 1, 3));
    WorkingParams base;
    base.epsilon = 1e-3;
    const WorkingParams p = base.resolve(2, max_abs_value(ds));
    const PointSet probes = sample_points(Sampler::Uniform, 500, 2, 0, 1, 4);
    for (SplitMode mode : {SplitMode::Equal, SplitMode::Random}) {
        const auto a = train_srt(ds, p, mode, 77);
        const auto b = train_srt(ds, p, mode, 77);
        CHECK(a.first.node_count() == b.first.node_count());
        CHECK(predict_srt(a.first, probes) == predict_srt(b.first, probes));
    }
}
