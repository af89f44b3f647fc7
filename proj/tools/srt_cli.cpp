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

// srt: generate data, fit and query sparse residual trees and forests.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <tbb/global_control.h>

#include "srt/bench.hpp"
#include "srt/dataset.hpp"
#include "srt/errors.hpp"
#include "srt/forest.hpp"
#include "srt/model_io.hpp"
#include "srt/report.hpp"
#include "srt/test_functions.hpp"

namespace {

enum Exit { kOk = 0, kUsage = 1, kData = 2, kNumerical = 3 };

struct GenArgs {
    std::string fn = "franke";
    std::string sampler = "halton";
    std::size_t n = 1000;
    std::size_t dim = 2;
    std::vector<double> box{0.0, 1.0};
    std::uint64_t seed = 0;
    std::string out;
};

struct FitArgs {
    std::string data;
    bool no_header = false;
    double epsilon = 0.01;
    std::size_t trees = 1;
    std::uint64_t seed = 0;
    std::optional<double> omega1, omega2, omega3, omega4;
    std::string kernel = "gaussian";
    std::optional<double> beta;
    std::optional<std::size_t> n_i_root, min_centers;
    std::size_t threads = 0;
    std::string model;
    std::string report;
};

struct PredictArgs {
    std::string model;
    std::string data;
    bool no_header = false;
    std::string out;
    std::size_t threads = 0;
};

struct BenchArgs {
    std::string suite;
    std::uint64_t seed = 0;
    std::string out;
};

std::unique_ptr<tbb::global_control> limit_threads(std::size_t threads) {
    if (threads == 0) return nullptr;
    return std::make_unique<tbb::global_control>(tbb::global_control::max_allowed_parallelism, threads);
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw srt::DataError("cannot write '" + path + "'");
    f << text;
}

int run_gen(const GenArgs& a) {
    if (a.box.size() != 2) throw srt::InvalidArgument("--box expects lo,hi");
    const auto fn = srt::test_function_from_string(a.fn);
    if (a.dim < srt::min_dimension(fn))
        throw srt::InvalidArgument("--dim is too small for '" + a.fn + "'");
    const auto sampler = srt::sampler_from_string(a.sampler);
    srt::Dataset ds = srt::make_dataset(fn, srt::sample_points(sampler, a.n, a.dim, a.box[0], a.box[1], a.seed));
    ds.check_distinct();
    srt::save_csv(ds, a.out);
    return kOk;
}

int run_fit(const FitArgs& a) {
    const auto guard = limit_threads(a.threads);
    const srt::Dataset ds = srt::load_csv(a.data, !a.no_header);

    srt::WorkingParams p;
    p.epsilon = a.epsilon;
    if (a.omega1) p.omega1 = *a.omega1;
    if (a.omega2) p.omega2 = *a.omega2;
    if (a.omega3) p.omega3 = *a.omega3;
    if (a.omega4) p.omega4 = *a.omega4;
    p.kernel = srt::kernel_kind_from_string(a.kernel);
    if (a.beta) p.imq_beta = *a.beta;
    if (a.n_i_root) p.n_i_root = *a.n_i_root;
    if (a.min_centers) p.min_centers = *a.min_centers;
    p.n_trees = a.trees;
    p.validate();

    auto [forest, reports] = srt::train_srf(ds, p, a.trees, a.seed);
    if (a.trees == 1)
        srt::save_model(forest.trees.front(), a.model);
    else
        srt::save_model(forest, a.model);
    if (!a.report.empty()) write_text(a.report, srt::format_training_report(reports));

    std::size_t nodes = 0, regions = 0;
    double seconds = 0.0;
    for (std::size_t i = 0; i < forest.size(); ++i) {
        nodes += forest.trees[i].node_count();
        regions += reports[i].insufficient_regions.size();
        seconds += reports[i].seconds;
    }
    std::printf("trees %zu nodes %zu insufficient %zu train_seconds %.3f\n", forest.size(), nodes, regions, seconds);
    return kOk;
}

int run_predict(const PredictArgs& a) {
    const auto guard = limit_threads(a.threads);
    const srt::LoadedModel m = srt::load_model(a.model);
    bool has_target = false;
    const srt::Dataset ds = srt::load_points_csv(a.data, !a.no_header, m.forest.dim(), has_target);
    const auto pred = srt::predict_srf(m.forest, ds.points);

    std::ostringstream s;
    for (std::size_t k = 0; k < ds.points.dim(); ++k) s << 'x' << k + 1 << ',';
    s << "prediction";
    if (has_target) s << ",truth,abs_error";
    s << '\n';
    for (std::size_t i = 0; i < ds.points.size(); ++i) {
        for (double v : ds.points[i]) s << srt::format_real(v) << ',';
        s << srt::format_real(pred[i]);
        if (has_target)
            s << ',' << srt::format_real(ds.values[i]) << ',' << srt::format_real(std::abs(pred[i] - ds.values[i]));
        s << '\n';
    }
    write_text(a.out, s.str());
    return kOk;
}

int run_report(const std::string& model) {
    const srt::LoadedModel m = srt::load_model(model);
    std::cout << srt::format_insufficient_regions(srt::summarize(m.forest));
    return kOk;
}

int run_bench(const BenchArgs& a) {
    std::string prefix = a.out;
    if (const auto dot = prefix.rfind('.'); dot != std::string::npos && prefix.find('/', dot) == std::string::npos)
        prefix.resize(dot);
    const auto rows = srt::run_bench(a.suite, a.seed, prefix);
    srt::write_bench_csv(rows, a.out);
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sparse residual tree and forest approximation"};
    app.require_subcommand(1);

    GenArgs gen;
    auto* g = app.add_subcommand("gen", "Sample a test function into a CSV dataset");
    g->add_option("--fn", gen.fn, "franke, local-osc, quad-saddle, bump-quad, osc-1d")->required();
    g->add_option("--sampler", gen.sampler, "halton, uniform, normal");
    g->add_option("--n", gen.n)->required()->check(CLI::PositiveNumber);
    g->add_option("--dim", gen.dim)->check(CLI::PositiveNumber);
    g->add_option("--box", gen.box, "lo,hi")->delimiter(',')->expected(2);
    g->add_option("--seed", gen.seed);
    g->add_option("--out", gen.out)->required();

    FitArgs fit;
    auto* f = app.add_subcommand("fit", "Train a tree (--trees 1) or a forest");
    f->add_option("--data", fit.data)->required()->check(CLI::ExistingFile);
    f->add_flag("--no-header", fit.no_header, "the data file has no header line");
    f->add_option("--epsilon", fit.epsilon, "expected relative absolute error");
    f->add_option("--trees", fit.trees)->check(CLI::PositiveNumber);
    f->add_option("--seed", fit.seed);
    f->add_option("--omega1", fit.omega1, "condition cap");
    f->add_option("--omega2", fit.omega2, "improvement threshold");
    f->add_option("--omega3", fit.omega3, "shape factor in (0,1)");
    f->add_option("--omega4", fit.omega4, "insufficiency factor");
    f->add_option("--kernel", fit.kernel, "gaussian or inverse-multiquadric");
    f->add_option("--beta", fit.beta, "inverse multiquadric exponent");
    f->add_option("--n-i-root", fit.n_i_root, "root fitting subset size");
    f->add_option("--min-centers", fit.min_centers);
    f->add_option("--threads", fit.threads, "worker threads (0 = all)");
    f->add_option("--model", fit.model)->required();
    f->add_option("--report", fit.report);

    PredictArgs pr;
    auto* p = app.add_subcommand("predict", "Evaluate a model on a CSV of points");
    p->add_option("--model", pr.model)->required()->check(CLI::ExistingFile);
    p->add_option("--data", pr.data)->required()->check(CLI::ExistingFile);
    p->add_flag("--no-header", pr.no_header);
    p->add_option("--out", pr.out)->required();
    p->add_option("--threads", pr.threads);

    std::string report_model;
    auto* r = app.add_subcommand("report", "Print the insufficient-data regions of a model");
    r->add_option("--model", report_model)->required()->check(CLI::ExistingFile);

    BenchArgs bench;
    auto* b = app.add_subcommand("bench", "Run a benchmark suite");
    b->add_option("--suite", bench.suite, "fig2, fig8, franke3d, scaling")
        ->required()
        ->check(CLI::IsMember({"fig2", "fig8", "franke3d", "scaling"}));
    b->add_option("--seed", bench.seed);
    b->add_option("--out", bench.out)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*g) return run_gen(gen);
        if (*f) return run_fit(fit);
        if (*p) return run_predict(pr);
        if (*r) return run_report(report_model);
        if (*b) return run_bench(bench);
    } catch (const srt::InvalidArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const srt::DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kData;
    } catch (const srt::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return kNumerical;
    }
    return kUsage;
}
