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

// Serialization of layouts (JSON with a fixed key order, flat CSV), the
// COCO dataset / results loaders, and PNG / JPEG image files.
//
// Layout JSON schema:
//
//   {"page_info": null | {file_name?, page_number?, width?, height?},
//    "elements": [element, ...]}
//
// where an element is either a nested layout
//   {"block_type": "layout", "page_info": ..., "elements": [...]}
// or a block carrying its geometry and optional features:
//   {"block_type": "interval",      "start", "end", "axis",
//                                   "canvas_width"?, "canvas_height"?, ...}
//   {"block_type": "rectangle",     "x_1", "y_1", "x_2", "y_2", ...}
//   {"block_type": "quadrilateral", "points": [[x, y] * 4], ...}
// with the optional keys id, text, category, score, parent, next, in that
// order.  Coordinates are rounded to 2 decimals on export.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include "lk/layout.hpp"

namespace lk::io {

/// One model prediction as read from a COCO results file.
struct DetectionRecord {
  std::int64_t image_id = 0;
  int category_id = 0;
  double x = 0, y = 0, width = 0, height = 0;  // COCO bbox convention
  double score = 0;
};

using CategoryMap = std::map<int, std::string>;

enum class CocoKind { dataset, results };

std::string export_json(const Layout& layout);
Layout load_json(std::string_view data);

/// Flat CSV: header id,category,score,text,x_1,y_1,x_2,y_2,parent,next with
/// a leading page_id column when page_info carries a page number.  Nesting
/// is flattened depth-first; non-rectangles export their bounding box.
std::string export_csv(const Layout& layout);

/// Parses COCO JSON into one Layout per image id.  `dataset` expects the
/// images/annotations/categories arrays; `results` a flat array of
/// detection records.  Explicit `categories` entries override the file's.
std::map<std::int64_t, Layout> load_coco(std::string_view data, CocoKind kind,
                                         const CategoryMap& categories = {});

/// PNG (read/write) and JPEG (read-only); everything is converted to
/// 8-bit RGB.
RasterImage load_image(const std::string& path);
void save_image(const RasterImage& image, const std::string& path);

/// Number formatting shared by the exporters: integral values print without
/// a decimal point, everything else as the shortest round-trip double.
std::string format_number(double v);

}  // namespace lk::io
