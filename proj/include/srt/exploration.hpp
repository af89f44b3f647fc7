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

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "srt/point_set.hpp"

namespace srt {

enum class KernelKind { Gaussian, InverseMultiquadric };

std::string_view to_string(KernelKind kind);
KernelKind kernel_kind_from_string(std::string_view name);

struct KernelSpec {
    KernelKind kind = KernelKind::Gaussian;
    double delta = 1.0;
    double beta = 1.0; ///< inverse multiquadric exponent, must exceed d/2

    /// Kernel value as a function of the squared distance.
    double operator()(double sq_dist) const;
};

/// gaussian: exp(-delta^2 |x-c|^2); inverse multiquadric: (1/delta^2 + |x-c|)^(-beta).
double kernel_eval(const KernelSpec& spec, std::span<const double> x, std::span<const double> center);

/**
 * Shape parameter for which the Gaussian centred at the subset mean takes the
 * value omega3 at the farthest subset point. Throws DegenerateGeometry when all
 * points coincide with the mean.
 */
double shape_parameter(const PointSet& subset, double omega3);

enum class StopReason { Condition, NoImprovement, ColumnLimit, RankDeficient };

std::string_view to_string(StopReason reason);
StopReason stop_reason_from_string(std::string_view name);

struct ExplorationBudget {
    double omega1 = 1e8;       ///< cap on the diagonal condition estimate of R
    double omega2 = 0.0;       ///< minimum RMS improvement per appended center
    double omega3 = 0.05;      ///< shape factor in (0, 1)
    std::size_t min_centers = 0;
};

struct ExplorationDiagnostics {
    std::vector<double> eps_trail; ///< RMS residual before any center, then after each committed one
    double kappa = 1.0;
    StopReason stop_reason = StopReason::NoImprovement;
};

/// One node's RBF layer.
struct Refinement {
    KernelSpec kernel;
    PointSet centers;
    std::vector<double> coefficients;
    std::vector<std::size_t> center_rows; ///< rows of the fitted subset used as centers
    ExplorationDiagnostics diagnostics;

    std::size_t size() const { return coefficients.size(); }
    double evaluate(std::span<const double> x) const;
};

/**
 * Greedy adaptive RBF fit of `residual` over `subset`.
 *
 * Centres are drawn from a farthest-point ordering of the subset that always
 * holds d+1 more points than committed centres; each step appends the
 * candidate whose Voronoi cell carries the largest mean squared temporary
 * residual. The loop stops on a condition-estimate violation (the offending
 * column is rolled back), on an RMS improvement below omega2 once
 * min_centers are committed (the last column is kept), or when the column
 * count reaches the subset size.
 *
 * `inherited_rows` are subset rows that seed the farthest-point ordering and
 * enter the basis first. With no inherited rows the point nearest the subset
 * mean is the first centre.
 */
Refinement explore_refinement(std::span<const double> residual, const PointSet& subset,
                              std::span<const std::size_t> inherited_rows,
                              const ExplorationBudget& budget, KernelSpec kernel);

/// sum_i coefficients_i * kernel(x, center_i) for every row of `points`.
std::vector<double> apply_refinement(const Refinement& refinement, const PointSet& points);

/// Arithmetic mean of the center counts along a root-to-node path.
double update_center_average(std::span<const std::size_t> node_counts);

/// Subset size for the next node: min(node_size, round(factor * n_bar_c)).
std::size_t next_subset_size(std::size_t node_size, double n_bar_c, double factor = 100.0);

} // namespace srt
