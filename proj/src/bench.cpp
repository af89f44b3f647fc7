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

#include "srt/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "srt/dataset.hpp"
#include "srt/errors.hpp"
#include "srt/metrics.hpp"
#include "srt/test_functions.hpp"

namespace srt {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

double box_distance_to_origin(const std::vector<double>& lo, const std::vector<double>& hi) {
    double s = 0.0;
    for (std::size_t k = 0; k < lo.size(); ++k) {
        const double c = std::clamp(0.0, lo[k], hi[k]);
        s += c * c;
    }
    return std::sqrt(s);
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

class Collector {
public:
    Collector(std::string suite, std::uint64_t seed) : suite_(std::move(suite)), seed_(seed) {}
    void add(const std::string& name, std::size_t n, const std::string& metric, double value) {
        rows_.push_back({suite_, name, n, seed_, metric, value});
    }
    std::vector<BenchRow> take() { return std::move(rows_); }

private:
    std::string suite_;
    std::uint64_t seed_;
    std::vector<BenchRow> rows_;
};

void bench_fig2(Collector& out, std::uint64_t seed) {
    const Dataset ds = make_dataset(TestFunction::QuadSaddle, sample_points(Sampler::Halton, 500, 2, -7, 7, seed));
    WorkingParams p;
    p.epsilon = 0.01;
    const auto start = Clock::now();
    auto [model, report] = train_srt(ds, p, SplitMode::Equal, seed);
    const double secs = seconds_since(start);
    const double train_rae = rae(predict_srt(model, ds.points), ds.values);
    out.add("quad-saddle", 500, "node_count", static_cast<double>(model.node_count()));
    out.add("quad-saddle", 500, "root_centers", static_cast<double>(model.root->refinement.size()));
    out.add("quad-saddle", 500, "training_rae", train_rae);
    out.add("quad-saddle", 500, "seconds", secs);
}

void write_grid(const std::string& path, const PointSet& grid, std::span<const double> truth,
                std::span<const double> pred, const SrfModel& model) {
    std::ofstream f(path);
    if (!f) throw DataError("cannot write '" + path + "'");
    for (std::size_t k = 0; k < grid.dim(); ++k) f << 'x' << k + 1 << ',';
    f << "truth,prediction,abs_error,centers\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (double v : grid[i]) f << format_real(v) << ',';
        f << format_real(truth[i]) << ',' << format_real(pred[i]) << ',' << format_real(std::abs(pred[i] - truth[i]))
          << ',' << centers_along_path(model, grid[i]) << '\n';
    }
}

void bench_fig8(Collector& out, std::uint64_t seed, const std::string& grid_prefix) {
    const PointSet grid = midpoint_grid(100, 2, -7, 7);
    const auto truth = test_function_eval(TestFunction::LocalOsc, grid);
    for (std::size_t n : {3000u, 6000u}) {
        const Dataset ds = make_dataset(TestFunction::LocalOsc, sample_points(Sampler::Halton, n, 2, -7, 7, seed));
        WorkingParams p;
        p.epsilon = 0.01;
        const auto start = Clock::now();
        auto [tree, report] = train_srt(ds, p, SplitMode::Equal, seed);
        const double secs = seconds_since(start);
        const SrfModel model = as_forest(std::move(tree));
        const auto pred = predict_srf(model, grid);

        std::size_t near = 0;
        for (const auto& r : report.insufficient_regions)
            if (box_distance_to_origin(r.box_lo, r.box_hi) <= 3.0) ++near;
        std::vector<double> centers(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) centers[i] = static_cast<double>(centers_along_path(model, grid[i]));

        const std::string name = "local-osc";
        out.add(name, n, "max_test_rae", rae(pred, truth));
        out.add(name, n, "test_rmae", rmae(pred, truth));
        out.add(name, n, "insufficient_regions", static_cast<double>(report.insufficient_regions.size()));
        out.add(name, n, "insufficient_near_origin", static_cast<double>(near));
        out.add(name, n, "median_path_centers", median(centers));
        out.add(name, n, "node_count", static_cast<double>(model.trees[0].node_count()));
        out.add(name, n, "seconds", secs);
        if (!grid_prefix.empty()) write_grid(grid_prefix + "_fig8_n" + std::to_string(n) + ".csv", grid, truth, pred, model);
    }
}

void bench_franke3d(Collector& out, std::uint64_t seed) {
    const PointSet test = sample_points(Sampler::Uniform, 5000, 3, 0, 1, derive_seed(seed, 0x7e57));
    const auto truth = test_function_eval(TestFunction::Franke, test);
    for (std::size_t n : {1000u, 10000u, 100000u}) {
        const Dataset ds = make_dataset(TestFunction::Franke, sample_points(Sampler::Halton, n, 3, 0, 1, seed));
        WorkingParams p;
        p.epsilon = 0.001;
        auto start = Clock::now();
        auto [srf, reports] = train_srf(ds, p, 5, seed);
        const double secs = seconds_since(start);
        out.add("srt", n, "test_rmae", rmae(predict_srt(srf.trees[0], test), truth));
        out.add("srf5", n, "test_rmae", rmae(predict_srf(srf, test), truth));
        out.add("srf5", n, "seconds", secs);
    }
}

void bench_scaling(Collector& out, std::uint64_t seed) {
    const PointSet probes = sample_points(Sampler::Uniform, 10000, 2, 0, 1, derive_seed(seed, 0x9b0be));
    for (std::size_t n : {10000u, 100000u, 200000u, 1000000u}) {
        const Dataset ds = make_dataset(TestFunction::Franke, sample_points(Sampler::Halton, n, 2, 0, 1, seed));
        WorkingParams p;
        p.epsilon = 1e-4;
        auto [model, report] = train_srt(ds, p, SplitMode::Equal, seed);
        const auto start = Clock::now();
        double sink = 0.0;
        for (std::size_t i = 0; i < probes.size(); ++i) sink += predict_srt(model, probes[i]);
        const volatile double keep = sink;
        (void)keep;
        const double per_point = seconds_since(start) / static_cast<double>(probes.size());
        out.add("franke2d", n, "train_seconds", report.seconds);
        out.add("franke2d", n, "point_visits", static_cast<double>(report.point_visits));
        out.add("franke2d", n, "node_count", static_cast<double>(model.node_count()));
        out.add("franke2d", n, "predict_seconds_per_point", per_point);
    }
}

} // namespace

std::size_t centers_along_path(const SrfModel& model, std::span<const double> x) {
    std::size_t total = 0;
    for (const auto& tree : model.trees) {
        const TreeNode* node = tree.root.get();
        while (node) {
            total += node->refinement.size();
            if (node->is_leaf()) break;
            node = node->children[node->split->first_side(x) ? 0 : 1].get();
        }
    }
    return total;
}

std::vector<BenchRow> run_bench(std::string_view suite, std::uint64_t seed, const std::string& grid_prefix) {
    Collector out{std::string(suite), seed};
    if (suite == "fig2")
        bench_fig2(out, seed);
    else if (suite == "fig8")
        bench_fig8(out, seed, grid_prefix);
    else if (suite == "franke3d")
        bench_franke3d(out, seed);
    else if (suite == "scaling")
        bench_scaling(out, seed);
    else
        throw InvalidArgument("unknown bench suite '" + std::string(suite) + "'");
    return out.take();
}

std::string format_bench_rows(const std::vector<BenchRow>& rows) {
    std::ostringstream s;
    s << kBenchHeader << '\n';
    for (const auto& r : rows)
        s << r.suite << ',' << r.case_name << ',' << r.n << ',' << r.seed << ',' << r.metric << ',' << format_real(r.value)
          << '\n';
    return s.str();
}

void write_bench_csv(const std::vector<BenchRow>& rows, const std::filesystem::path& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw DataError("cannot write '" + path.string() + "'");
    f << format_bench_rows(rows);
}

} // namespace srt
