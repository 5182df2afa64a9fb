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

#include "lk/registry.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "json.hpp"

namespace lk::registry {

namespace fs = std::filesystem;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split_segments(std::string_view path) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= path.size()) {
    const std::size_t slash = path.find('/', pos);
    if (slash == std::string_view::npos) {
      out.emplace_back(path.substr(pos));
      break;
    }
    out.emplace_back(path.substr(pos, slash - pos));
    pos = slash + 1;
  }
  return out;
}

std::string lookup_key(const ModelUri& uri) {
  return "lp://" + uri.dataset + "/" + uri.model_arch;
}

io::CategoryMap load_categories(const std::string& path) {
  io::CategoryMap out;
  if (path.empty()) return out;
  const nlohmann::json j = nlohmann::json::parse(read_file(path), nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw ParseError(path + ": category map must be a JSON object");
  for (const auto& [key, value] : j.items())
    out[std::stoi(key)] = value.get<std::string>();
  return out;
}

}  // namespace

std::string ModelUri::to_string() const {
  return "lp://" + dataset + "/" + model_arch + "/" + resource;
}

std::string default_registry_root() {
  if (const char* env = std::getenv("LAYOUTKIT_REGISTRY")) return env;
  return "registry";
}

ModelUri parse_model_uri(std::string_view uri) {
  constexpr std::string_view scheme = "lp://";
  if (uri.substr(0, scheme.size()) != scheme)
    throw ParseError("model uri must start with 'lp://': '" + std::string(uri) + "'");
  const auto segments = split_segments(uri.substr(scheme.size()));
  if (segments.size() < 2 || segments.size() > 3)
    throw ParseError("model uri needs 2 or 3 path segments: '" + std::string(uri) + "'");
  for (const std::string& s : segments)
    if (s.empty())
      throw ParseError("model uri has an empty segment: '" + std::string(uri) + "'");
  ModelUri out;
  out.dataset = segments[0];
  out.model_arch = segments[1];
  if (segments.size() == 3) out.resource = segments[2];
  return out;
}

RegistryIndex RegistryIndex::load(const std::string& index_path) {
  const nlohmann::json j = nlohmann::json::parse(read_file(index_path), nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw ParseError(index_path + ": registry index must be a JSON object");

  const fs::path base = fs::path(index_path).parent_path();
  auto resolve = [&](const std::string& p) {
    if (p.empty() || fs::path(p).is_absolute()) return p;
    return (base / p).string();
  };

  RegistryIndex out;
  for (const auto& [key, value] : j.items()) {
    const ModelUri uri = parse_model_uri(key);  // validates, normalizes
    RegistryEntry entry;
    entry.results_path = resolve(value.at("results_path").get<std::string>());
    if (value.contains("categories_path"))
      entry.categories_path = resolve(value["categories_path"].get<std::string>());
    if (value.contains("notes")) entry.notes = value["notes"].get<std::string>();
    if (!fs::exists(entry.results_path))
      throw Error(index_path + ": results file missing for " + key + ": " +
                  entry.results_path);
    if (!entry.categories_path.empty() && !fs::exists(entry.categories_path))
      throw Error(index_path + ": categories file missing for " + key + ": " +
                  entry.categories_path);
    out.entries_[lookup_key(uri)] = std::move(entry);
  }
  return out;
}

RegistryIndex RegistryIndex::load_root(const std::string& root_dir) {
  return load((fs::path(root_dir) / "index.json").string());
}

Layout RegistryIndex::detect(const ModelUri& uri, std::int64_t image_id,
                             double score_threshold) const {
  const auto it = entries_.find(lookup_key(uri));
  if (it == entries_.end()) {
    std::string msg = "model uri not registered: " + uri.to_string() +
                      "; available:";
    for (const auto& [key, entry] : entries_) msg += "\n  " + key;
    throw Error(msg);
  }
  const RegistryEntry& entry = it->second;
  const io::CategoryMap categories = load_categories(entry.categories_path);
  auto layouts = io::load_coco(read_file(entry.results_path),
                               io::CocoKind::results, categories);
  const auto li = layouts.find(image_id);
  if (li == layouts.end()) return Layout{};
  return li->second.filter([&](const TextBlock& b) {
    return b.score() && *b.score() >= score_threshold;
  });
}

}  // namespace lk::registry
