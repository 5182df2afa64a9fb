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

// The two digitization pipelines: visual table extraction (detection
// filtering, ruling-based columns, row clustering, cell assignment) and
// dense-text reorganization (packing token crops onto a compact canvas,
// then mapping OCR results back to the source page).

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lk/layout.hpp"

namespace lk::pipelines {

/// Greedy non-maximum suppression on bounding boxes: blocks in descending
/// score order survive iff their IoU with every survivor stays below the
/// threshold.
Layout nms_blocks(const Layout& layout, double iou_threshold);

/// Intersection-over-union of two blocks' bounding boxes.
double iou(const Coordinate& a, const Coordinate& b);

enum class Orientation { vertical, horizontal };

/// Positions of ruling lines inside `region`, in absolute page coordinates,
/// ascending.  The crop is binarized at luma 128; a position qualifies when
/// its longest dark run along `orientation` covers at least
/// `min_run_fraction` of the region extent.  Candidates within 2 px merge
/// to their midpoint.
std::vector<double> detect_rulings(const RasterImage& image,
                                   const Rectangle& region,
                                   Orientation orientation,
                                   double min_run_fraction);

struct RowBand {
  double top = 0;
  double bottom = 0;
  friend bool operator==(const RowBand&, const RowBand&) = default;
};

/// Groups tokens into horizontal bands: sorted by y-center, a new band
/// starts when the gap between consecutive centers exceeds gap_threshold.
/// Band extent is [min y1, max y2] over its tokens.
std::vector<RowBand> cluster_rows(const Layout& tokens, double gap_threshold);

/// Merges a band into its predecessor when the gap between them is below
/// min_gap (duplicate-row suppression).  Input must be sorted by top.
std::vector<RowBand> suppress_close_rows(std::vector<RowBand> bands,
                                         double min_gap);

struct TableStructure {
  Rectangle region{0, 0, 0, 0};
  std::vector<double> column_separators;           // x positions inside region
  std::vector<RowBand> row_bands;                  // sorted, disjoint
  std::vector<std::vector<std::vector<TextBlock>>> cells;  // [row][col]

  std::size_t rows() const { return row_bands.size(); }
  std::size_t columns() const { return column_separators.size() + 1; }
};

struct TableParams {
  double score_min = 0.8;
  double iou_threshold = 0.5;
  double min_run_fraction = 0.8;
  std::optional<double> row_gap;  // default: median token height in region
  double row_min_gap = 3;
  /// Rulings this close to the region edge count as table borders, not
  /// column separators.
  double border_margin = 4;
};

/// Full table pipeline: keep "table" detections with score >= score_min,
/// suppress overlaps, then per region detect vertical rulings as column
/// separators, cluster left-most-column tokens into rows, and assign every
/// token whose center falls in a band x column interval to that cell
/// (cell contents sorted left to right).  Regions without rulings become
/// single-column tables.
std::vector<TableStructure> extract_tables(const RasterImage& image,
                                           const Layout& detections,
                                           const Layout& tokens,
                                           const TableParams& params = {});

/// Stacks same-width tables in page order: row bands are re-based onto a
/// continuous vertical axis and rows renumbered; cell tokens keep their
/// page-local coordinates.  Throws when column counts differ, naming the
/// pages.
TableStructure concat_tables(const std::vector<TableStructure>& tables,
                             const std::vector<int>& page_order);

/// Cell texts joined row-wise (tokens space-separated inside a cell),
/// RFC-4180-style quoting, one line per table row.
std::string table_to_csv(const TableStructure& table, char delimiter = ',');

struct Placement {
  std::size_t token_index = 0;  // position in the flattened input layout
  Rectangle source{0, 0, 0, 0};
  Rectangle target{0, 0, 0, 0};
};

/// A bijective map from source token boxes onto a dense canvas: line-packed
/// targets, invertible for OCR remapping.
struct ReorgPlan {
  double canvas_width = 0;
  double canvas_height = 0;
  double max_height = 0;
  double gap = 0;
  std::vector<Placement> placements;

  std::string to_json() const;
  static ReorgPlan from_json(std::string_view data);
};

/// Packs tokens (already in reading order) left-to-right, top-to-bottom.
/// Tokens keep their size; ones taller than max_height scale down
/// uniformly.  `gap` separates lines and tokens within a line.  Each line
/// is max_height tall with tokens vertically centered; canvas height is
/// lines * (max_height + gap).  Throws when a token is wider than
/// canvas_width after scaling.
ReorgPlan plan_reorganization(const Layout& tokens, double max_height,
                              double gap, double canvas_width);

/// White canvas of plan size with every source crop blitted to its target
/// (nearest-neighbor when scaled).
RasterImage render_reorganized(const ReorgPlan& plan, const RasterImage& image);

struct RemapResult {
  Layout layout;
  std::size_t dropped = 0;  // words whose center fell outside every target
};

/// Maps OCR word boxes from the reorganized canvas back to source-page
/// coordinates through the placement that contains each word's center.
RemapResult remap_ocr_results(const ReorgPlan& plan, const Layout& ocr_layout);

}  // namespace lk::pipelines
