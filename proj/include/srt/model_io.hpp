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

#include <filesystem>
#include <string>

#include "srt/forest.hpp"
#include "srt/tree.hpp"

namespace srt {

enum class ModelKind { Srt, Srf };

inline constexpr int kModelFormatVersion = 1;

/// A deserialized model document; single trees are held as one-member forests.
struct LoadedModel {
    ModelKind kind = ModelKind::Srf;
    SrfModel forest;
};

std::string serialize_model(const SrtModel& model);
std::string serialize_model(const SrfModel& model);
void save_model(const SrtModel& model, const std::filesystem::path& path);
void save_model(const SrfModel& model, const std::filesystem::path& path);

/// Throws UnsupportedVersion on a version mismatch and FormatError on malformed input.
LoadedModel deserialize_model(const std::string& text);
LoadedModel load_model(const std::filesystem::path& path);

} // namespace srt
