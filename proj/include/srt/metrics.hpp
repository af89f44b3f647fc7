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

#include <span>

namespace srt {

struct RmaeResult {
    double value = 0.0;
    bool absolute_fallback = false; ///< sum |truth| was zero; value is the mean absolute error
};

/// sum|pred - truth| / sum|truth|.
RmaeResult rmae_checked(std::span<const double> predictions, std::span<const double> truths);

inline double rmae(std::span<const double> predictions, std::span<const double> truths) {
    return rmae_checked(predictions, truths).value;
}

} // namespace srt
