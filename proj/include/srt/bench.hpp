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

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "srt/forest.hpp"

namespace srt {

/// One long-format result: suite,case,n,seed,metric,value.
struct BenchRow {
    std::string suite;
    std::string case_name;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    std::string metric;
    double value = 0.0;
};

inline constexpr std::string_view kBenchHeader = "suite,case,n,seed,metric,value";

/// Sum of center counts over the nodes visited when predicting at x, over all trees.
std::size_t centers_along_path(const SrfModel& model, std::span<const double> x);

/**
 * Runs a named suite (fig2, fig8, franke3d, scaling). When `grid_prefix` is
 * non-empty, suites that produce error grids write `<grid_prefix>_<case>.csv`.
 */
std::vector<BenchRow> run_bench(std::string_view suite, std::uint64_t seed, const std::string& grid_prefix = {});

std::string format_bench_rows(const std::vector<BenchRow>& rows);
void write_bench_csv(const std::vector<BenchRow>& rows, const std::filesystem::path& path);

} // namespace srt
