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

// Two visualization modes for layouts on raster images: box overlays with
// category labels, and a text-only recreation of the page from OCR'd
// tokens.  Both renderers are pure functions of their inputs; rendering is
// integer-deterministic so outputs are bit-identical across platforms.

#pragma once

#include <map>
#include <string>
#include <string_view>

#include "lk/layout.hpp"

namespace lk::viz {

struct DrawStyle {
  std::map<std::string, Rgb> box_color_per_category;
  int box_width = 1;       // must be >= 1
  bool show_score = false;
  int font_size = 8;       // label cell height in pixels
  Rgb default_color{230, 30, 30};
  Rgb text_color{0, 0, 0};
};

/// Stable palette entry for a category label (FNV-1a hash to hue).
Rgb category_color(std::string_view label);

/// Overlays every block's outline (rectangles as rings, quadrilaterals as
/// four segments, intervals as slabs over the page) plus its category
/// label, score optional.  Out-of-bounds geometry is clipped.
RasterImage draw_boxes(const RasterImage& image, const Layout& layout,
                       const DrawStyle& style = {});

/// Recreates the page by drawing each block's text with its top-left at
/// the block's top-left, glyph cells scaled to the block height.
RasterImage draw_texts(const Layout& layout, int width, int height,
                       const DrawStyle& style = {});

/// Draws `text` with glyph cells of `cell_height` px starting at (x, y).
/// Shared by the box-label and text-mode renderers.
void render_text(RasterImage& canvas, std::string_view text, double x,
                 double y, double cell_height, Rgb color);

}  // namespace lk::viz
