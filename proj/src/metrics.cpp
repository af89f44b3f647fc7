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

#include "srt/metrics.hpp"

#include <cmath>

#include "srt/errors.hpp"

namespace srt {

RmaeResult rmae_checked(std::span<const double> predictions, std::span<const double> truths) {
    if (predictions.size() != truths.size()) throw InvalidArgument("rmae: length mismatch");
    if (truths.empty()) throw InvalidArgument("rmae: empty input");
    double err = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < truths.size(); ++i) {
        err += std::abs(predictions[i] - truths[i]);
        scale += std::abs(truths[i]);
    }
    if (scale > 0.0) return {err / scale, false};
    return {err / static_cast<double>(truths.size()), true};
}

} // namespace srt
