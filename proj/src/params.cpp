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

#include "srt/params.hpp"

#include <cmath>

#include "srt/errors.hpp"

namespace srt {

WorkingParams WorkingParams::resolve(std::size_t dim, double max_abs_f) const {
    WorkingParams out = *this;
    if (!out.omega2) out.omega2 = kOmega2Factor * epsilon * max_abs_f;
    if (!out.n_i_root) out.n_i_root = 500 * dim;
    if (!out.min_centers) out.min_centers = dim + 3;
    if (out.kernel == KernelKind::InverseMultiquadric && out.imq_beta == 0.0)
        out.imq_beta = 0.5 * static_cast<double>(dim) + 1.0;
    out.validate();
    if (out.kernel == KernelKind::InverseMultiquadric && !(out.imq_beta > 0.5 * static_cast<double>(dim)))
        throw InvalidArgument("inverse multiquadric exponent must exceed d/2");
    if (*out.min_centers < dim + 2) throw InvalidArgument("min_centers must be at least d+2");
    return out;
}

void WorkingParams::validate() const {
    if (!(omega1 > 1.0)) throw InvalidArgument("omega1 must exceed 1");
    if (omega2 && !(*omega2 >= 0.0)) throw InvalidArgument("omega2 must be nonnegative");
    if (!(omega3 > 0.0 && omega3 < 1.0)) throw InvalidArgument("omega3 must lie in (0, 1)");
    if (!(omega4 > 0.0)) throw InvalidArgument("omega4 must be positive");
    if (!(epsilon > 0.0)) throw InvalidArgument("epsilon must be positive");
    if (!(subset_factor > 0.0)) throw InvalidArgument("subset factor must be positive");
    if (n_trees == 0) throw InvalidArgument("tree count must be positive");
    if (n_i_root && *n_i_root == 0) throw InvalidArgument("root subset size must be positive");
}

} // namespace srt
