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
#include <optional>

#include "srt/exploration.hpp"

namespace srt {

/// Scale of the default improvement threshold, relative to epsilon * max|f|.
inline constexpr double kOmega2Factor = 1e-4;

/**
 * Training controls. Unset optionals take their data-dependent defaults when
 * training starts (see resolve()).
 */
struct WorkingParams {
    double omega1 = 1e8;                 ///< condition cap
    std::optional<double> omega2;        ///< default: kOmega2Factor * epsilon * max|f|
    double omega3 = 0.05;                ///< shape factor
    double omega4 = 2.0;                 ///< insufficiency factor on n_bar_c
    double epsilon = 0.01;               ///< expected RAE
    KernelKind kernel = KernelKind::Gaussian;
    double imq_beta = 0.0;               ///< 0 selects d/2 + 1 for the inverse multiquadric
    std::optional<std::size_t> n_i_root; ///< default: 500 * d
    std::optional<std::size_t> min_centers; ///< default: d + 3
    double subset_factor = 100.0;        ///< N'_I = subset_factor * n_bar_c below the root
    std::size_t n_trees = 1;
    bool keep_fit_records = false;       ///< retain per-node subsets for diagnostics

    /// Fills every unset default for a dataset of dimension `dim` and max |f| = `max_abs_f`.
    WorkingParams resolve(std::size_t dim, double max_abs_f) const;

    /// Throws InvalidArgument on out-of-range values.
    void validate() const;
};

} // namespace srt
