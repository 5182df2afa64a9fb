/*
 * Copyright 2026 The layoutkit Authors
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
 */

// The model-zoo seam without neural inference: lp:// URIs resolve through a
// local index to precomputed COCO results files, and detect() serves the
// stored predictions per image.  A real inference backend can replace the
// file lookup behind the same call.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include "lk/io.hpp"
#include "lk/layout.hpp"

namespace lk::registry {

/// Parsed "lp://<dataset>/<model-architecture>[/<resource>]"; the resource
/// segment defaults to "config".
struct ModelUri {
  std::string dataset;
  std::string model_arch;
  std::string resource = "config";

  /// "lp://dataset/model_arch/resource".
  std::string to_string() const;
  friend bool operator==(const ModelUri&, const ModelUri&) = default;
};

ModelUri parse_model_uri(std::string_view uri);

/// Registry root resolution: the LAYOUTKIT_REGISTRY environment variable
/// when set, otherwise "./registry".
std::string default_registry_root();

struct RegistryEntry {
  std::string results_path;     // COCO results JSON
  std::string categories_path;  // JSON map id -> label, optional
  std::string notes;
};

/// Read-only index from model uri to detection fixtures.  Loaded from a
/// JSON object mapping uris to {results_path, categories_path?, notes?};
/// relative paths resolve against the index file's directory.  Lookup keys
/// on dataset + architecture (the resource segment selects an artifact of
/// the same model, not a different entry).
class RegistryIndex {
 public:
  static RegistryIndex load(const std::string& index_path);
  /// Loads <root>/index.json.
  static RegistryIndex load_root(const std::string& root_dir);

  /// Detections for one image with score >= threshold, categories resolved
  /// through the entry's category map.  Unknown uris raise an Error listing
  /// the registered ones; an absent image id yields an empty Layout.
  Layout detect(const ModelUri& uri, std::int64_t image_id,
                double score_threshold = 0.0) const;

  const std::map<std::string, RegistryEntry>& entries() const { return entries_; }

 private:
  std::map<std::string, RegistryEntry> entries_;  // key: lp://dataset/arch
};

}  // namespace lk::registry
