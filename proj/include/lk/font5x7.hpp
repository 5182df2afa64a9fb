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

// Embedded monospace 5x7 bitmap font (printable ASCII) with a 6x8 cell:
// one pixel of spacing to the right and below each glyph.  All rendering
// and the grid-based OCR stub build on this table so golden-image tests
// are bit-exact across platforms.

#pragma once

#include <array>
#include <cstdint>

#include "lk/image.hpp"

namespace lk::font {

inline constexpr int kGlyphWidth = 5;
inline constexpr int kGlyphHeight = 7;
inline constexpr int kCellWidth = 6;
inline constexpr int kCellHeight = 8;

inline constexpr char32_t kFirstChar = 32;   // space
inline constexpr char32_t kLastChar = 126;   // '~'

using Glyph = std::array<std::uint8_t, kGlyphHeight>;  // bit 4 = left column

/// Glyph rows for a code point; characters outside the table render as a
/// filled box.
const Glyph& glyph(char32_t c);

/// True when the glyph bit at column u, row v is set.
bool glyph_bit(const Glyph& g, int u, int v);

/// Exact-matches the 6x8 cell at (x, y) against the font (ink = luma < 128).
/// Returns the matched character, ' ' for an all-blank cell, or -1 when no
/// glyph fits.
int match_cell(const RasterImage& image, int x, int y);

}  // namespace lk::font
