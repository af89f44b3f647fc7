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
#include <vector>

#include "oracles.hpp"
#include "srt/errors.hpp"
#include "srt/exploration.hpp"
#include "srt/params.hpp"
#include "srt/sampling.hpp"
#include "srt/test_functions.hpp"

using namespace srt;

namespace {

double rms(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s / static_cast<double>(v.size()));
}

/// Kernel matrix times coefficients, formed directly from the Gaussian formula.
std::vector<double> gaussian_sum(const PointSet& pts, const PointSet& centers, const std::vector<double>& alpha,
                                 double delta) {
    std::vector<double> out(pts.size(), 0.0);
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t l = 0; l < centers.size(); ++l) {
            double s = 0.0;
            for (std::size_t k = 0; k < pts.dim(); ++k) s += (pts[i][k] - centers[l][k]) * (pts[i][k] - centers[l][k]);
            out[i] += alpha[l] * std::exp(-delta * delta * s);
        }
    return out;
}

} // namespace

TEST_CASE("kernel values") {
    const std::vector<double> c{0.0, 0.0}, x{1.0, 0.0};
    KernelSpec g{KernelKind::Gaussian, 1.0, 1.0};
    CHECK(kernel_eval(g, c, c) == 1.0);
    CHECK(kernel_eval(g, x, c) == doctest::Approx(0.367879441171442).epsilon(1e-14));
    g.delta = 3.7;
    CHECK(kernel_eval(g, c, c) == 1.0);

    KernelSpec imq{KernelKind::InverseMultiquadric, 1.0, 2.0};
    CHECK(kernel_eval(imq, x, c) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(kernel_kind_from_string("imq") == KernelKind::InverseMultiquadric);
    CHECK_THROWS_AS(kernel_kind_from_string("cubic"), InvalidArgument);
}

TEST_CASE("shape parameter examples") {
    PointSet a(2, 1);
    a[0][0] = -2.0;
    a[1][0] = 2.0;
    CHECK(shape_parameter(a, std::exp(-1.0)) == doctest::Approx(0.5).epsilon(1e-15));
    a[0][0] = -1.0;
    a[1][0] = 1.0;
    CHECK(shape_parameter(a, std::exp(-1.0)) == doctest::Approx(1.0).epsilon(1e-15));

    PointSet same(3, 2);
    for (std::size_t i = 0; i < 3; ++i) {
        same[i][0] = 1.5;
        same[i][1] = -2.0;
    }
    CHECK_THROWS_AS(shape_parameter(same, 0.05), DegenerateGeometry);
}

TEST_CASE("shape parameter scales inversely with the coordinates") {
    Rng rng(51);
    for (int t = 0; t < 20; ++t) {
        const PointSet p = oracle::uniform_cloud(30 + t, 1 + t % 3, rng, -1.0, 1.0);
        const double scale = 0.25 + 0.5 * t;
        PointSet q = p;
        for (std::size_t i = 0; i < q.size(); ++i)
            for (double& v : q[i]) v *= scale;
        CHECK(shape_parameter(q, 0.05) == doctest::Approx(shape_parameter(p, 0.05) / scale).epsilon(1e-12));
    }
}

TEST_CASE("a single Gaussian bump is recovered") {
    Rng rng(52);
    const PointSet sub = oracle::uniform_cloud(200, 2, rng);
    const double delta = shape_parameter(sub, 0.05);
    const std::size_t c = 37;
    std::vector<double> r(sub.size());
    for (std::size_t i = 0; i < sub.size(); ++i)
        r[i] = std::exp(-delta * delta * oracle::sq_dist(sub, i, c));

    ExplorationBudget budget;
    budget.omega2 = 1e-14;
    budget.min_centers = 1;
    const Refinement ref = explore_refinement(r, sub, {}, budget, KernelSpec{});
    CHECK(ref.kernel.delta == delta);
    const auto fit = apply_refinement(ref, sub);
    std::vector<double> rest(sub.size());
    for (std::size_t i = 0; i < sub.size(); ++i) rest[i] = r[i] - fit[i];
    CHECK(rms(rest) <= 1e-6 * rms(r));
    CHECK(ref.size() < sub.size() / 2);
}

TEST_CASE("condition cap and strictly decreasing trail") {
    Rng rng(53);
    for (int t = 0; t < 10; ++t) {
        const std::size_t d = 1 + t % 3;
        const PointSet sub = oracle::uniform_cloud(150, d, rng, -2.0, 2.0);
        std::vector<double> r(sub.size());
        for (std::size_t i = 0; i < sub.size(); ++i) r[i] = std::sin(3.0 * sub[i][0]) + sub[i][d - 1] * sub[i][d - 1];
        ExplorationBudget budget;
        budget.omega1 = t % 2 ? 1e4 : 1e8;
        budget.omega2 = 1e-6;
        budget.min_centers = d + 3;
        const Refinement ref = explore_refinement(r, sub, {}, budget, KernelSpec{});
        const auto& trail = ref.diagnostics.eps_trail;
        CHECK(trail.size() == ref.size() + 1);
        CHECK(ref.diagnostics.kappa <= budget.omega1);
        for (std::size_t k = 1; k < trail.size(); ++k) CHECK(trail[k] < trail[k - 1]);
    }
}

TEST_CASE("one exploration fits the saddle on 500 Halton points") {
    const Dataset ds = make_dataset(TestFunction::QuadSaddle, sample_points(Sampler::Halton, 500, 2, -7, 7, 0));
    double max_f = 0.0;
    for (double v : ds.values) max_f = std::max(max_f, std::abs(v));
    const WorkingParams p = WorkingParams{}.resolve(2, max_f);
    ExplorationBudget budget;
    budget.omega1 = p.omega1;
    budget.omega2 = *p.omega2;
    budget.omega3 = p.omega3;
    budget.min_centers = *p.min_centers;
    const Refinement ref = explore_refinement(ds.values, ds.points, {}, budget, KernelSpec{});
    const auto fit = apply_refinement(ref, ds.points);
    double err = 0.0;
    for (std::size_t i = 0; i < fit.size(); ++i) err = std::max(err, std::abs(fit[i] - ds.values[i]));
    CHECK(err / max_f <= 0.01);
    CHECK(ref.size() >= 20);
    CHECK(ref.size() <= 90);
}

TEST_CASE("apply_refinement basics") {
    Refinement zero;
    zero.centers = PointSet(2, 1);
    zero.centers[1][0] = 1.0;
    zero.coefficients = {0.0, 0.0};
    PointSet probes(3, 1);
    probes[1][0] = 0.3;
    probes[2][0] = -4.0;
    CHECK(apply_refinement(zero, probes) == std::vector<double>(3, 0.0));

    Refinement one;
    one.kernel = KernelSpec{KernelKind::Gaussian, 2.5, 1.0};
    one.centers = PointSet(1, 2);
    one.centers[0][0] = 0.7;
    one.centers[0][1] = -0.2;
    one.coefficients = {1.0};
    CHECK(apply_refinement(one, one.centers) == std::vector<double>{1.0});
}

TEST_CASE("refinement on the subset equals the kernel sum and the trail") {
    Rng rng(54);
    const PointSet sub = oracle::uniform_cloud(120, 2, rng, -3.0, 3.0);
    std::vector<double> r(sub.size());
    for (std::size_t i = 0; i < sub.size(); ++i) r[i] = sub[i][0] * sub[i][1] - std::cos(sub[i][1]);
    ExplorationBudget budget;
    budget.omega2 = 1e-5;
    budget.min_centers = 5;
    const Refinement ref = explore_refinement(r, sub, {}, budget, KernelSpec{});
    const auto fit = apply_refinement(ref, sub);
    const auto direct = gaussian_sum(sub, ref.centers, ref.coefficients, ref.kernel.delta);
    const double scale = oracle::max_abs(direct);
    std::vector<double> rest(sub.size());
    for (std::size_t i = 0; i < sub.size(); ++i) {
        CHECK(std::abs(fit[i] - direct[i]) <= 1e-10 * scale);
        rest[i] = r[i] - fit[i];
    }
    CHECK(rms(rest) == doctest::Approx(ref.diagnostics.eps_trail.back()).epsilon(1e-8));
    for (std::size_t l = 0; l < ref.size(); ++l)
        for (std::size_t k = 0; k < 2; ++k) CHECK(ref.centers[l][k] == sub[ref.center_rows[l]][k]);
}

TEST_CASE("inherited centers enter first") {
    Rng rng(55);
    const PointSet sub = oracle::uniform_cloud(100, 2, rng);
    std::vector<double> r(sub.size());
    for (std::size_t i = 0; i < sub.size(); ++i) r[i] = std::exp(sub[i][0]) - sub[i][1];
    const std::vector<std::size_t> inherited{12, 3, 77};
    ExplorationBudget budget;
    budget.omega2 = 1e-4;
    budget.min_centers = 5;
    const Refinement ref = explore_refinement(r, sub, inherited, budget, KernelSpec{});
    REQUIRE(ref.size() >= 3);
    CHECK(ref.center_rows[0] == 12);
    CHECK(ref.center_rows[1] == 3);
    CHECK(ref.center_rows[2] == 77);
}

TEST_CASE("inverse multiquadric exploration") {
    Rng rng(56);
    const PointSet sub = oracle::uniform_cloud(80, 1, rng, -1.0, 1.0);
    std::vector<double> r(sub.size());
    for (std::size_t i = 0; i < sub.size(); ++i) r[i] = std::abs(sub[i][0]);
    ExplorationBudget budget;
    budget.omega2 = 1e-6;
    budget.min_centers = 4;
    const Refinement ref =
        explore_refinement(r, sub, {}, budget, KernelSpec{KernelKind::InverseMultiquadric, 1.0, 1.5});
    CHECK(ref.kernel.kind == KernelKind::InverseMultiquadric);
    CHECK(ref.kernel.beta == 1.5);
    CHECK(ref.diagnostics.eps_trail.back() < ref.diagnostics.eps_trail.front());
}

TEST_CASE("center averages and subset sizes") {
    const std::vector<std::size_t> a{53}, b{10, 20, 30}, c{7, 7, 7, 7};
    CHECK(update_center_average(a) == 53.0);
    CHECK(next_subset_size(100000, 53.0) == 5300);
    CHECK(next_subset_size(1200, 53.0) == 1200);
    CHECK(update_center_average(b) == 20.0);
    CHECK(update_center_average(c) == 7.0);
    CHECK_THROWS_AS(update_center_average(std::vector<std::size_t>{}), InvalidArgument);
}
