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

#include <string>
#include <vector>

#include "srt/forest.hpp"
#include "srt/tree.hpp"

namespace srt {

/**
 * Plain-text listing of under-sampled regions, one block per region:
 *
 *   region <tree> <index> status <s> n_points <n> residual_rae <r>
 *     box_lo <d reals>
 *     box_hi <d reals>
 *     constraint <normal reals> <= | > <threshold>
 */
std::string format_insufficient_regions(const std::vector<TrainingReport>& reports);

/// Region listing followed by one `node` line per tree node.
std::string format_training_report(const std::vector<TrainingReport>& reports);

std::vector<TrainingReport> summarize(const SrfModel& model);

} // namespace srt
