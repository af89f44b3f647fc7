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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "srt/dataset.hpp"
#include "srt/errors.hpp"
#include "srt/forest.hpp"
#include "srt/metrics.hpp"
#include "srt/model_io.hpp"
#include "srt/sampling.hpp"
#include "srt/test_functions.hpp"

using namespace srt;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "srt_unit";
    fs::create_directories(dir);
    return dir / name;
}

void write_text(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

std::string read_text(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const char* kTwoCenters = R"({
  "format": "srt-model", "version": 1, "kind": "srt", "dim": 2, "master_seed": 0,
  "trees": [{
    "seed": 0, "split_mode": "equal",
    "params": {"omega1": 1e8, "omega2": 1e-6, "omega3": 0.05, "omega4": 2, "epsilon": 0.01,
               "kernel": "gaussian", "imq_beta": 0, "n_i_root": 1000, "min_centers": 5,
               "subset_factor": 100, "n_trees": 1},
    "nodes": [{
      "id": 0, "status": "leaf-converged", "depth": 0, "n_points": 2, "n_subset": 2,
      "residual_rae": 0, "n_bar_c": 2, "box_lo": [0, 0], "box_hi": [1, 1],
      "kernel": "gaussian", "delta": 1.5, "beta": 1,
      "centers": [[0, 0], [1, 0.5]], "coefficients": [2, -0.75],
      "kappa": 1, "stop_reason": "no-improvement", "eps_trail": [1, 0]
    }]
  }]
})";

} // namespace

TEST_CASE("csv round trip is bit exact") {
    const Dataset ds = make_dataset(TestFunction::Franke, sample_points(Sampler::Uniform, 500, 3, 0, 1, 31));
    const auto path = scratch("roundtrip.csv");
    save_csv(ds, path);
    const Dataset back = load_csv(path, true);
    REQUIRE(back.size() == ds.size());
    CHECK(back.points.coords() == ds.points.coords());
    CHECK(back.values == ds.values);
    CHECK(format_real(0.1) == "0.10000000000000001");
}

TEST_CASE("csv errors") {
    const auto dup = scratch("dup.csv");
    write_text(dup, "x1,x2,f\n0,0,1\n1,2,3\n0.5,0.5,2\n1,2,4\n");
    try {
        (void)load_csv(dup, true);
        FAIL("duplicate rows accepted");
    } catch (const DataError& e) {
        const std::string what = e.what();
        CHECK(what.find("rows 2 and 4") != std::string::npos);
    }

    const auto empty = scratch("empty.csv");
    write_text(empty, "");
    CHECK_THROWS_AS(load_csv(empty, true), FormatError);
    write_text(empty, "x1,f\n");
    CHECK_THROWS_AS(load_csv(empty, true), FormatError);

    const auto ragged = scratch("ragged.csv");
    write_text(ragged, "1,2,3\n4,5\n");
    CHECK_THROWS_AS(load_csv(ragged, false), FormatError);
    write_text(ragged, "1,2,3\n4,abc,6\n");
    CHECK_THROWS_AS(load_csv(ragged, false), FormatError);
    CHECK_THROWS_AS(load_csv(scratch("missing.csv"), false), DataError);
}

TEST_CASE("model round trip keeps predictions exact") {
    const Dataset ds = make_dataset(TestFunction::Franke, sample_points(Sampler::Uniform, 3000, 2, 0, 1, 32));
    WorkingParams base;
    base.epsilon = 1e-3;
    const auto [forest, reports] = train_srf(ds, base.resolve(2, 1.22), 3, 4);
    const auto path = scratch("model.json");
    save_model(forest, path);
    const LoadedModel back = load_model(path);
    CHECK(back.kind == ModelKind::Srf);
    const PointSet probes = sample_points(Sampler::Uniform, 1000, 2, 0, 1, 33);
    CHECK(predict_srf(back.forest, probes) == predict_srf(forest, probes));
    CHECK(serialize_model(back.forest) == read_text(path));

    const LoadedModel single = deserialize_model(serialize_model(forest.trees[0]));
    CHECK(single.kind == ModelKind::Srt);
    CHECK(predict_srt(single.forest.trees[0], probes) == predict_srt(forest.trees[0], probes));
}

TEST_CASE("hand written model evaluates the kernel sum") {
    const LoadedModel m = deserialize_model(kTwoCenters);
    REQUIRE(m.forest.size() == 1);
    const std::vector<std::vector<double>> xs{{0, 0}, {0.3, -0.2}, {1, 0.5}, {2.5, 4}};
    for (const auto& x : xs) {
        const double d0 = x[0] * x[0] + x[1] * x[1];
        const double d1 = (x[0] - 1) * (x[0] - 1) + (x[1] - 0.5) * (x[1] - 0.5);
        const double want = 2 * std::exp(-2.25 * d0) - 0.75 * std::exp(-2.25 * d1);
        CHECK(predict_srf(m.forest, x) == doctest::Approx(want).epsilon(1e-15));
    }
}

TEST_CASE("model document errors") {
    std::string v = kTwoCenters;
    v.replace(v.find("\"version\": 1"), 12, "\"version\": 999");
    CHECK_THROWS_AS(deserialize_model(v), UnsupportedVersion);

    const std::string whole = kTwoCenters;
    CHECK_THROWS_AS(deserialize_model(whole.substr(0, whole.size() / 2)), FormatError);
    CHECK_THROWS_AS(deserialize_model(""), FormatError);

    std::string bad_coef = kTwoCenters;
    bad_coef.replace(bad_coef.find("[2, -0.75]"), 10, "[2]");
    CHECK_THROWS_AS(deserialize_model(bad_coef), FormatError);
    CHECK_THROWS_AS(load_model(scratch("missing.json")), DataError);
}

TEST_CASE("test function values") {
    const std::vector<double> origin{0.0, 0.0}, ones{1.0, 1.0};
    CHECK(test_function_eval(TestFunction::Franke, origin) == doctest::Approx(0.7664205912849231).epsilon(1e-15));
    CHECK(test_function_eval(TestFunction::QuadSaddle, ones) == 0.0);
    const std::vector<double> p{2.0, -1.0};
    CHECK(test_function_eval(TestFunction::QuadSaddle, p) == 6.0);
    CHECK(test_function_eval(TestFunction::Osc1d, std::vector<double>{0.0}) == 10.0);
    CHECK_THROWS_AS(test_function_eval(TestFunction::Franke, std::vector<double>{0.5}), InvalidArgument);
    CHECK_THROWS_AS(test_function_from_string("nope"), InvalidArgument);
}

TEST_CASE("samplers and grids") {
    const PointSet g = midpoint_grid(4, 2, -1, 1);
    REQUIRE(g.size() == 16);
    CHECK(g[0][0] == -0.75);
    CHECK(g[15][1] == 0.75);
    const PointSet a = sample_points(Sampler::Normal, 20000, 1, -3, 3, 5);
    double m = 0.0, s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m += a[i][0];
    m /= static_cast<double>(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i][0] - m) * (a[i][0] - m);
    s = std::sqrt(s / static_cast<double>(a.size()));
    CHECK(std::abs(m) < 0.03);
    CHECK(s == doctest::Approx(1.0).epsilon(0.03));
    CHECK(sample_points(Sampler::Uniform, 50, 3, 0, 1, 9).coords() ==
          sample_points(Sampler::Uniform, 50, 3, 0, 1, 9).coords());
}

TEST_CASE("rmae examples") {
    const std::vector<double> t{1.0, -1.0, 2.0}, p{1.5, -1.0, 1.0};
    CHECK(rmae(p, t) == doctest::Approx(0.375).epsilon(1e-15));
    CHECK(rmae(t, t) == 0.0);
    const std::vector<double> zero(3, 0.0);
    const auto r = rmae_checked(p, zero);
    CHECK(r.absolute_fallback);
    CHECK(r.value == doctest::Approx(3.5 / 3).epsilon(1e-15));
}
