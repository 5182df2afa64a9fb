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

#include "lk/viz.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "lk/font5x7.hpp"
#include "lk/io.hpp"

namespace lk::viz {

namespace {

void put(RasterImage& img, int x, int y, Rgb c) {
  if (x >= 0 && x < img.width() && y >= 0 && y < img.height())
    img.set_pixel(x, y, c);
}

void fill_rect(RasterImage& img, int x1, int y1, int x2, int y2, Rgb c) {
  x1 = std::max(x1, 0);
  y1 = std::max(y1, 0);
  x2 = std::min(x2, img.width() - 1);
  y2 = std::min(y2, img.height() - 1);
  for (int y = y1; y <= y2; ++y)
    for (int x = x1; x <= x2; ++x) img.set_pixel(x, y, c);
}

// Ring of `width` px growing inward from the inclusive pixel boundary, so a
// 1 px box leaves the strict interior untouched.
void draw_rect_outline(RasterImage& img, const Rectangle& r, int width, Rgb c) {
  const int x1 = static_cast<int>(std::llround(r.x1()));
  const int y1 = static_cast<int>(std::llround(r.y1()));
  const int x2 = static_cast<int>(std::llround(r.x2()));
  const int y2 = static_cast<int>(std::llround(r.y2()));
  for (int k = 0; k < width; ++k) {
    const int ix1 = x1 + k, iy1 = y1 + k, ix2 = x2 - k, iy2 = y2 - k;
    if (ix1 > ix2 || iy1 > iy2) break;
    fill_rect(img, ix1, iy1, ix2, iy1, c);
    fill_rect(img, ix1, iy2, ix2, iy2, c);
    fill_rect(img, ix1, iy1, ix1, iy2, c);
    fill_rect(img, ix2, iy1, ix2, iy2, c);
  }
}

void draw_segment(RasterImage& img, Point a, Point b, int width, Rgb c) {
  int x0 = static_cast<int>(std::llround(a.x));
  int y0 = static_cast<int>(std::llround(a.y));
  const int x1 = static_cast<int>(std::llround(b.x));
  const int y1 = static_cast<int>(std::llround(b.y));
  const int dx = std::abs(x1 - x0), sx = x0 < x1 ? 1 : -1;
  const int dy = -std::abs(y1 - y0), sy = y0 < y1 ? 1 : -1;
  int err = dx + dy;
  while (true) {
    for (int oy = 0; oy < width; ++oy)
      for (int ox = 0; ox < width; ++ox) put(img, x0 + ox, y0 + oy, c);
    if (x0 == x1 && y0 == y1) break;
    const int e2 = 2 * err;
    if (e2 >= dy) { err += dy; x0 += sx; }
    if (e2 <= dx) { err += dx; y0 += sy; }
  }
}

Rgb style_color(const DrawStyle& style, const TextBlock& b) {
  if (!b.category()) return style.default_color;
  const auto it = style.box_color_per_category.find(*b.category());
  if (it != style.box_color_per_category.end()) return it->second;
  return category_color(*b.category());
}

std::string label_text(const DrawStyle& style, const TextBlock& b) {
  std::string label = b.category().value_or("");
  if (style.show_score && b.score()) {
    const double rounded = std::round(*b.score() * 100.0) / 100.0;
    if (!label.empty()) label += ' ';
    label += io::format_number(rounded);
  }
  return label;
}

}  // namespace

Rgb category_color(std::string_view label) {
  std::uint32_t h = 2166136261u;  // FNV-1a
  for (unsigned char c : label) {
    h ^= c;
    h *= 16777619u;
  }
  const int hue = static_cast<int>(h % 360);
  // HSV -> RGB with s = 0.85, v = 0.85.
  const double s = 0.85, v = 0.85;
  const double f = (hue % 60) / 60.0;
  const double p = v * (1 - s), q = v * (1 - s * f), t = v * (1 - s * (1 - f));
  double r = 0, g = 0, b = 0;
  switch (hue / 60) {
    case 0: r = v; g = t; b = p; break;
    case 1: r = q; g = v; b = p; break;
    case 2: r = p; g = v; b = t; break;
    case 3: r = p; g = q; b = v; break;
    case 4: r = t; g = p; b = v; break;
    default: r = v; g = p; b = q; break;
  }
  auto to8 = [](double x) { return static_cast<std::uint8_t>(std::lround(x * 255)); };
  return {to8(r), to8(g), to8(b)};
}

void render_text(RasterImage& canvas, std::string_view text, double x,
                 double y, double cell_height, Rgb color) {
  if (cell_height <= 0) return;
  const double s = cell_height / font::kCellHeight;
  const double cell_w = font::kCellWidth * s;
  for (std::size_t k = 0; k < text.size(); ++k) {
    const double gx = x + static_cast<double>(k) * cell_w;
    const font::Glyph& g =
        font::glyph(static_cast<unsigned char>(text[k]));
    const int px1 = static_cast<int>(std::llround(gx));
    const int px2 = static_cast<int>(std::llround(gx + cell_w));
    const int py1 = static_cast<int>(std::llround(y));
    const int py2 = static_cast<int>(std::llround(y + cell_height));
    for (int py = std::max(py1, 0); py < std::min(py2, canvas.height()); ++py) {
      const int v = static_cast<int>((py - py1) / s);
      for (int px = std::max(px1, 0); px < std::min(px2, canvas.width()); ++px) {
        const int u = static_cast<int>((px - px1) / s);
        if (u < font::kGlyphWidth && v < font::kGlyphHeight &&
            font::glyph_bit(g, u, v))
          canvas.set_pixel(px, py, color);
      }
    }
  }
}

RasterImage draw_boxes(const RasterImage& image, const Layout& layout,
                       const DrawStyle& style) {
  if (style.box_width < 1) throw Error("box_width must be >= 1");
  RasterImage out = image;
  for (const TextBlock& b : layout.flatten()) {
    const Rgb color = style_color(style, b);
    const Coordinate& c = b.block();
    if (const auto* q = std::get_if<Quadrilateral>(&c)) {
      const auto& p = q->points();
      for (int i = 0; i < 4; ++i)
        draw_segment(out, p[i], p[(i + 1) % 4], style.box_width, color);
    } else {
      // Intervals draw as slabs across the page.
      const Rectangle r = bounding_rect(
          c, CanvasSize{double(image.width()), double(image.height())});
      draw_rect_outline(out, r, style.box_width, color);
    }
    const std::string label = label_text(style, b);
    if (!label.empty()) {
      const Rectangle r = bounding_rect(
          c, CanvasSize{double(image.width()), double(image.height())});
      double ly = r.y1() - style.font_size - 1;
      if (ly < 0) ly = r.y1() + style.box_width + 1;
      render_text(out, label, r.x1(), ly, style.font_size, color);
    }
  }
  return out;
}

RasterImage draw_texts(const Layout& layout, int width, int height,
                       const DrawStyle& style) {
  RasterImage out(width, height, kWhite);
  for (const TextBlock& b : layout.flatten()) {
    if (!b.text() || b.text()->empty()) continue;
    const Rectangle r = bounding_rect(
        b.block(), CanvasSize{double(width), double(height)});
    render_text(out, *b.text(), r.x1(), r.y1(), r.height(), style.text_color);
  }
  return out;
}

}  // namespace lk::viz
