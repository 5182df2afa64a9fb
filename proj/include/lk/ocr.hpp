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

// The OCR-agent contract, Tesseract TSV ingestion, and the character-level
// evaluation metrics.  No recognition model ships with the library: agents
// either replay engine output from files or decode images rendered with the
// bundled bitmap font.

#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "lk/layout.hpp"

namespace lk::ocr {

/// Unified engine interface: one call from page image to word-level blocks
/// (text, rectangle, confidence).  Implementations must be usable from one
/// thread at a time; distinct instances may run concurrently.
class OcrAgent {
 public:
  virtual ~OcrAgent() = default;
  virtual Layout detect(const RasterImage& image) = 0;
};

/// Parses Tesseract's 12-column TSV output (header row required).  Emits
/// one block per row with level >= min_level; structural rows (conf -1)
/// other than line rows are skipped.  With min_level <= 4, line rows become
/// parent blocks (category "line") and word rows link to them via `parent`.
/// Confidences are rescaled from [0, 100] to [0, 1].
Layout parse_tesseract_tsv(std::string_view data, int min_level = 5);

/// Replays a Tesseract TSV file as an OCR agent (file-based ingestion in
/// place of a live engine).
class TsvFileOcrAgent : public OcrAgent {
 public:
  explicit TsvFileOcrAgent(std::string path, int min_level = 5);
  Layout detect(const RasterImage& image) override;

 private:
  std::string path_;
  int min_level_;
};

/// Deterministic stub agent for integration tests: reads back pages whose
/// text was rendered with the bundled 5x7 font at scale 1 on the character
/// grid (cells of 6x8 px anchored at multiples of 6 and 8).  Every cell is
/// matched exactly against the font; consecutive non-blank cells in a grid
/// row form one word.
class GridFontOcrAgent : public OcrAgent {
 public:
  Layout detect(const RasterImage& image) override;
};

/// Multiset overlap of the two strings' Unicode code points:
/// |intersection| / |union|, 1.0 when both are empty.
double char_jaccard(std::string_view predicted, std::string_view truth);

/// Unit-cost edit distance (insert / delete / substitute) over Unicode
/// code points.
std::size_t levenshtein(std::string_view predicted, std::string_view truth);

}  // namespace lk::ocr
