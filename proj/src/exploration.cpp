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

#include "srt/exploration.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "srt/errors.hpp"
#include "srt/incremental_qr.hpp"
#include "srt/sampling.hpp"

namespace srt {

std::string_view to_string(KernelKind kind) {
    switch (kind) {
    case KernelKind::Gaussian: return "gaussian";
    case KernelKind::InverseMultiquadric: return "inverse-multiquadric";
    }
    return "gaussian";
}

KernelKind kernel_kind_from_string(std::string_view name) {
    if (name == "gaussian") return KernelKind::Gaussian;
    if (name == "inverse-multiquadric" || name == "imq") return KernelKind::InverseMultiquadric;
    throw InvalidArgument("unknown kernel '" + std::string(name) + "'");
}

std::string_view to_string(StopReason reason) {
    switch (reason) {
    case StopReason::Condition: return "condition";
    case StopReason::NoImprovement: return "no-improvement";
    case StopReason::ColumnLimit: return "column-limit";
    case StopReason::RankDeficient: return "rank-deficient";
    }
    return "no-improvement";
}

StopReason stop_reason_from_string(std::string_view name) {
    if (name == "condition") return StopReason::Condition;
    if (name == "no-improvement") return StopReason::NoImprovement;
    if (name == "column-limit") return StopReason::ColumnLimit;
    if (name == "rank-deficient") return StopReason::RankDeficient;
    throw FormatError("unknown stop reason '" + std::string(name) + "'");
}

double KernelSpec::operator()(double sq_dist) const {
    if (kind == KernelKind::Gaussian) return std::exp(-delta * delta * sq_dist);
    return std::pow(1.0 / (delta * delta) + std::sqrt(sq_dist), -beta);
}

double kernel_eval(const KernelSpec& spec, std::span<const double> x, std::span<const double> center) {
    if (x.size() != center.size()) throw InvalidArgument("kernel_eval: dimension mismatch");
    return spec(squared_distance(x, center));
}

double shape_parameter(const PointSet& subset, double omega3) {
    if (subset.empty()) throw InvalidArgument("shape_parameter: empty subset");
    if (!(omega3 > 0.0 && omega3 < 1.0)) throw InvalidArgument("shape_parameter: omega3 must lie in (0, 1)");
    const auto centre = subset.mean();
    double max_sq = 0.0;
    for (std::size_t i = 0; i < subset.size(); ++i) max_sq = std::max(max_sq, squared_distance(subset[i], centre));
    if (max_sq == 0.0) throw DegenerateGeometry("shape_parameter: all points coincide");
    return std::sqrt(-std::log(omega3) / max_sq);
}

double Refinement::evaluate(std::span<const double> x) const {
    double s = 0.0;
    for (std::size_t l = 0; l < coefficients.size(); ++l)
        s += coefficients[l] * kernel(squared_distance(x, centers[l]));
    return s;
}

std::vector<double> apply_refinement(const Refinement& refinement, const PointSet& points) {
    if (refinement.size() > 0 && points.dim() != refinement.centers.dim())
        throw InvalidArgument("apply_refinement: dimension mismatch");
    std::vector<double> out(points.size(), 0.0);
    for (std::size_t i = 0; i < points.size(); ++i) out[i] = refinement.evaluate(points[i]);
    return out;
}

namespace {

std::vector<double> kernel_column(const KernelSpec& kernel, const PointSet& subset, std::size_t row) {
    std::vector<double> col(subset.size());
    const auto c = subset[row];
    for (std::size_t i = 0; i < subset.size(); ++i) col[i] = kernel(squared_distance(subset[i], c));
    return col;
}

constexpr int kCorrectionSteps = 3;

double rms(double sum_sq, std::size_t n) { return std::sqrt(sum_sq / static_cast<double>(n)); }

} // namespace

Refinement explore_refinement(std::span<const double> residual, const PointSet& subset,
                              std::span<const std::size_t> inherited_rows,
                              const ExplorationBudget& budget, KernelSpec kernel) {
    const std::size_t m = subset.size();
    const std::size_t d = subset.dim();
    if (residual.size() != m) throw InvalidArgument("explore_refinement: residual length mismatch");
    if (m < d + 2) throw InvalidArgument("explore_refinement: subset needs at least d+2 points");
    if (!(budget.omega1 > 1.0)) throw InvalidArgument("explore_refinement: omega1 must exceed 1");

    kernel.delta = shape_parameter(subset, budget.omega3);

    Refinement out;
    out.kernel = kernel;
    IncrementalQr qr(residual);
    std::vector<std::vector<double>> columns;
    std::vector<std::size_t> centers;
    std::vector<char> is_center(m, 0);
    auto& diag = out.diagnostics;
    diag.eps_trail.push_back(rms(qr.rhs_tail_sq(), m));

    // Tries a column; returns false (with the column rolled back) on a condition or rank failure.
    bool stopped = false;
    auto try_append = [&](std::size_t row) -> bool {
        auto col = kernel_column(kernel, subset, row);
        qr.append_column(col);
        if (qr.diagonal(qr.cols() - 1) == 0.0) {
            qr.drop_last();
            diag.stop_reason = StopReason::RankDeficient;
            return false;
        }
        if (qr.condition_estimate() > budget.omega1) {
            qr.drop_last();
            diag.stop_reason = StopReason::Condition;
            return false;
        }
        columns.push_back(std::move(col));
        centers.push_back(row);
        is_center[row] = 1;
        diag.eps_trail.push_back(rms(qr.rhs_tail_sq(), m));
        return true;
    };

    QuasiUniformState qs;
    if (inherited_rows.empty()) {
        qs = quasi_uniform_extend(subset, {}, 1, StartRule::MeanNearest);
        try_append(qs.selected.front());
    } else {
        qs = quasi_uniform_extend(subset, inherited_rows, inherited_rows.size(), StartRule::MeanNearest);
        for (std::size_t row : inherited_rows) {
            if (is_center[row]) continue;
            // An inherited column that breaks conditioning is skipped; it stays a candidate.
            try_append(row);
        }
    }
    if (centers.size() == m) {
        diag.stop_reason = StopReason::ColumnLimit;
        stopped = true;
    }

    std::vector<double> temp(m);
    std::vector<double> cell_sum;
    std::vector<std::size_t> cell_count;
    bool retried = false;
    while (!stopped) {
        const std::size_t j = centers.size();
        quasi_uniform_grow(qs, subset, j + d + 1);

        std::copy(residual.begin(), residual.end(), temp.begin());
        if (j > 0) {
            const auto alpha = qr.solve();
            for (std::size_t l = 0; l < j; ++l) {
                const auto& col = columns[l];
                const double a = alpha[l];
                for (std::size_t i = 0; i < m; ++i) temp[i] -= a * col[i];
            }
        }

        const std::size_t cells = qs.selected.size();
        cell_sum.assign(cells, 0.0);
        cell_count.assign(cells, 0);
        for (std::size_t i = 0; i < m; ++i) {
            const std::size_t l = qs.nearest_label[i];
            cell_sum[l] += temp[i] * temp[i];
            ++cell_count[l];
        }
        std::size_t best = cells;
        double best_mean = -1.0;
        for (std::size_t l = 0; l < cells; ++l) {
            if (is_center[qs.selected[l]] || cell_count[l] == 0) continue;
            const double mean = cell_sum[l] / static_cast<double>(cell_count[l]);
            if (mean > best_mean) {
                best_mean = mean;
                best = l;
            }
        }
        if (best == cells) {
            if (!retried && qs.selected.size() < m) {
                retried = true;
                quasi_uniform_grow(qs, subset, qs.selected.size() + d + 1);
                continue;
            }
            diag.stop_reason = StopReason::NoImprovement;
            break;
        }
        retried = false;

        const double eps_before = diag.eps_trail.back();
        if (!try_append(qs.selected[best])) break;
        const double eps_after = diag.eps_trail.back();
        const double improvement = eps_before - eps_after;
        if (improvement <= 0.0) {
            // A column that does not reduce the residual is not kept.
            qr.drop_last();
            columns.pop_back();
            is_center[centers.back()] = 0;
            centers.pop_back();
            diag.eps_trail.pop_back();
            diag.stop_reason = StopReason::NoImprovement;
            break;
        }
        if (centers.size() >= budget.min_centers && improvement < budget.omega2) {
            diag.stop_reason = StopReason::NoImprovement;
            break;
        }
        if (centers.size() == m) {
            diag.stop_reason = StopReason::ColumnLimit;
            break;
        }
    }

    if (!centers.empty()) {
        out.coefficients = qr.solve();
        // Correction steps against the residual formed in extended precision;
        // near the condition cap they tighten A^T (r - A alpha) noticeably.
        std::vector<double> rest(m);
        for (int step = 0; step < kCorrectionSteps; ++step) {
            for (std::size_t i = 0; i < m; ++i) {
                long double s = residual[i];
                for (std::size_t l = 0; l < centers.size(); ++l)
                    s -= static_cast<long double>(out.coefficients[l]) * columns[l][i];
                rest[i] = static_cast<double>(s);
            }
            const auto delta = qr.solve(rest);
            for (std::size_t l = 0; l < centers.size(); ++l) out.coefficients[l] += delta[l];
        }
        diag.kappa = qr.condition_estimate();
    }
    out.center_rows = centers;
    out.centers = subset.select(centers);
    return out;
}

double update_center_average(std::span<const std::size_t> node_counts) {
    if (node_counts.empty()) throw InvalidArgument("update_center_average: empty path");
    double s = 0.0;
    for (std::size_t c : node_counts) s += static_cast<double>(c);
    return s / static_cast<double>(node_counts.size());
}

std::size_t next_subset_size(std::size_t node_size, double n_bar_c, double factor) {
    const double target = std::round(factor * n_bar_c);
    if (target >= static_cast<double>(node_size)) return node_size;
    return static_cast<std::size_t>(std::max(target, 0.0));
}

} // namespace srt
